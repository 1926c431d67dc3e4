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

#include "dpbench/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace dpbench::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(DPBENCH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const detail::Ops* select(Backend backend) {
#if defined(DPBENCH_HAVE_AVX2)
  if (backend == Backend::avx2) return &detail::avx2_ops();
#endif
  (void)backend;
  return &detail::scalar_ops();
}

struct Dispatch {
  Backend backend;
  const detail::Ops* ops;
};

Dispatch& dispatch() {
  static Dispatch d = [] {
    const Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    return Dispatch{b, select(b)};
  }();
  return d;
}

}  // namespace

Backend active() { return dispatch().backend; }

bool avx2_supported() { return cpu_has_avx2(); }

void force(Backend backend) {
  if (backend == Backend::avx2 && !cpu_has_avx2())
    throw std::runtime_error("AVX2 backend not supported on this CPU");
  dispatch().backend = backend;
  dispatch().ops = select(backend);
}

std::string_view backend_name(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "unknown";
}

double dot(const double* a, const double* b, std::size_t n) {
  return dispatch().ops->dot(a, b, n);
}

double sum_sq(const double* a, std::size_t n) {
  return dispatch().ops->sum_sq(a, n);
}

double sum_abs_prod(const double* a, const double* b, std::size_t n) {
  return dispatch().ops->sum_abs_prod(a, b, n);
}

double weighted_sq_err(const double* w, const double* a, const double* b,
                       std::size_t n) {
  return dispatch().ops->weighted_sq_err(w, a, b, n);
}

void mul_add(double* y, const double* a, const double* b, std::size_t n) {
  dispatch().ops->mul_add(y, a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  dispatch().ops->axpy(alpha, x, y, n);
}

void matvec(const double* w, const double* x, const double* bias, double* y,
            std::size_t rows, std::size_t cols) {
  const detail::Ops& ops = *dispatch().ops;
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = ops.dot(w + r * cols, x, cols) + (bias ? bias[r] : 0.0);
}

}  // namespace dpbench::kernels
