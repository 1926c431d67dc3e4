// Copyright 2026 The dpbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "dpbench/kernels.hpp"
#include "dpbench/mlp_policy.hpp"
#include "dpbench/rng.hpp"
#include "dpbench/rollout.hpp"
#include "dpbench/train.hpp"

using namespace dpbench;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double scale = 1.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * rng.normal();
  return v;
}

// Sizes around the SIMD width boundaries plus a large one.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17,
                              31, 32, 33, 100, 1000, 4097};

}  // namespace

TEST_CASE("scalar kernels reference semantics") {
  kernels::force(kernels::Backend::scalar);
  const double a[] = {1.0, -2.0, 3.0};
  const double b[] = {0.5, 4.0, -1.0};
  const double w[] = {1.0, 0.5, 2.0};
  CHECK(kernels::dot(a, b, 3) == doctest::Approx(0.5 - 8.0 - 3.0));
  CHECK(kernels::sum_sq(a, 3) == doctest::Approx(14.0));
  CHECK(kernels::sum_abs_prod(a, b, 3) == doctest::Approx(0.5 + 8.0 + 3.0));
  CHECK(kernels::weighted_sq_err(w, a, b, 3) ==
        doctest::Approx(0.25 + 18.0 + 32.0));
  double y[] = {1.0, 1.0, 1.0};
  kernels::mul_add(y, a, b, 3);
  CHECK(y[0] == doctest::Approx(1.5));
  CHECK(y[1] == doctest::Approx(-7.0));
  CHECK(y[2] == doctest::Approx(-2.0));
  double z[] = {1.0, 1.0, 1.0};
  kernels::axpy(2.0, a, z, 3);
  CHECK(z[0] == doctest::Approx(3.0));
  CHECK(z[1] == doctest::Approx(-3.0));
  CHECK(z[2] == doctest::Approx(7.0));
}

TEST_CASE("matvec equals row dots plus bias") {
  kernels::force(kernels::Backend::scalar);
  const double w[] = {1, 2, 3, 4, 5, 6};  // 2x3
  const double x[] = {1, -1, 2};
  const double bias[] = {0.5, -0.5};
  double y[2];
  kernels::matvec(w, x, bias, y, 2, 3);
  CHECK(y[0] == doctest::Approx(1 - 2 + 6 + 0.5));
  CHECK(y[1] == doctest::Approx(4 - 5 + 12 - 0.5));
  kernels::matvec(w, x, nullptr, y, 2, 3);
  CHECK(y[0] == doctest::Approx(5.0));
}

TEST_CASE("simd backend equivalence against the scalar reference") {
  if (!kernels::avx2_supported()) {
    MESSAGE("AVX2 not available; scalar backend only");
    return;
  }
  Rng rng(123);
  for (std::size_t n : kSizes) {
    const auto a = random_vec(rng, n, 2.0);
    const auto b = random_vec(rng, n, 0.7);
    auto w = random_vec(rng, n);
    for (auto& x : w) x = std::fabs(x);

    kernels::force(kernels::Backend::scalar);
    const double dot_s = kernels::dot(a.data(), b.data(), n);
    const double ss_s = kernels::sum_sq(a.data(), n);
    const double ap_s = kernels::sum_abs_prod(a.data(), b.data(), n);
    const double we_s = kernels::weighted_sq_err(w.data(), a.data(), b.data(), n);
    auto y_s = random_vec(rng, n);
    auto y_v = y_s;
    kernels::mul_add(y_s.data(), a.data(), b.data(), n);
    auto z_s = random_vec(rng, n);
    auto z_v = z_s;
    kernels::axpy(1.7, a.data(), z_s.data(), n);

    kernels::force(kernels::Backend::avx2);
    kernels::axpy(1.7, a.data(), z_v.data(), n);
    const double dot_v = kernels::dot(a.data(), b.data(), n);
    const double ss_v = kernels::sum_sq(a.data(), n);
    const double ap_v = kernels::sum_abs_prod(a.data(), b.data(), n);
    const double we_v = kernels::weighted_sq_err(w.data(), a.data(), b.data(), n);
    kernels::mul_add(y_v.data(), a.data(), b.data(), n);

    // Reductions may differ by summation order only.
    const double scale = 1.0 + std::fabs(dot_s);
    CHECK(std::fabs(dot_v - dot_s) / scale < 1e-13);
    CHECK(std::fabs(ss_v - ss_s) / (1.0 + ss_s) < 1e-13);
    CHECK(std::fabs(ap_v - ap_s) / (1.0 + ap_s) < 1e-13);
    CHECK(std::fabs(we_v - we_s) / (1.0 + we_s) < 1e-13);

    // Elementwise kernels are bit-identical (no FMA contraction).
    for (std::size_t i = 0; i < n; ++i) REQUIRE(y_v[i] == y_s[i]);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(z_v[i] == z_s[i]);
  }
  kernels::force(kernels::Backend::avx2);
}

TEST_CASE("policy rollout agrees across backends over a short horizon") {
  if (!kernels::avx2_supported()) return;
  // The policy matvec reduction order differs between backends; over a short
  // horizon the closed loop must still agree tightly (chaos amplifies the
  // ulp-level differences only over long runs).
  const ModelParams plant;
  PolicyParams policy = pump_primer_policy(RobotKind::pendubot,
                                           std::vector<std::uint32_t>{16}, 0);
  Rng rng(404);
  for (auto& w : policy.params) w += 0.05 * rng.normal();

  auto run = [&](kernels::Backend backend) {
    kernels::force(backend);
    MlpPolicyController controller(policy, RobotKind::pendubot, plant);
    return rollout(controller, RobotKind::pendubot, plant, ImperfectionConfig{},
                   0.2, 0.002);
  };
  const Trajectory scalar_t = run(kernels::Backend::scalar);
  const Trajectory avx2_t = run(kernels::Backend::avx2);
  REQUIRE(scalar_t.size() == avx2_t.size());
  for (std::size_t i = 0; i < scalar_t.size(); ++i) {
    CHECK(std::fabs(scalar_t.q1[i] - avx2_t.q1[i]) < 1e-9);
    CHECK(std::fabs(scalar_t.qd2[i] - avx2_t.qd2[i]) < 1e-9);
    CHECK(std::fabs(scalar_t.tau1[i] - avx2_t.tau1[i]) < 1e-9);
  }
  kernels::force(kernels::Backend::avx2);
}

TEST_CASE("backend selection") {
  CHECK(kernels::backend_name(kernels::Backend::scalar) == "scalar");
  CHECK(kernels::backend_name(kernels::Backend::avx2) == "avx2");
  kernels::force(kernels::Backend::scalar);
  CHECK(kernels::active() == kernels::Backend::scalar);
  if (kernels::avx2_supported()) kernels::force(kernels::Backend::avx2);
  CHECK(kernels::active() == (kernels::avx2_supported()
                                  ? kernels::Backend::avx2
                                  : kernels::Backend::scalar));
}
