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

#include "dpbench/energy_lqr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dpbench/dynamics.hpp"

namespace dpbench {
namespace {

using Mat4 = std::array<double, 16>;  // row-major
using Vec4 = std::array<double, 4>;

Mat4 matmul(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const double aik = a[i * 4 + k];
      for (int j = 0; j < 4; ++j) c[i * 4 + j] += aik * b[k * 4 + j];
    }
  return c;
}

Mat4 transpose(const Mat4& a) {
  Mat4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[j * 4 + i] = a[i * 4 + j];
  return t;
}

Vec4 matvec4(const Mat4& a, const Vec4& x) {
  Vec4 y{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) y[i] += a[i * 4 + j] * x[j];
  return y;
}

double wrap_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  angle = std::fmod(angle + std::numbers::pi, two_pi);
  if (angle < 0.0) angle += two_pi;
  return angle - std::numbers::pi;
}

// Continuous-time linearization about the upright equilibrium via central
// differences on the frictionless dynamics (joint friction is small and the
// passive side is compensated by the harness).
void linearize_upright(const ModelParams& p, int input_joint, Mat4& a_out,
                       Vec4& b_out) {
  ModelParams frictionless = p;
  frictionless.b1 = frictionless.b2 = 0.0;
  frictionless.cf1 = frictionless.cf2 = 0.0;

  const State x_star{std::numbers::pi, 0.0, 0.0, 0.0};
  const double h = 1.0e-6;

  auto f = [&](const State& x, double u) -> Vec4 {
    TorquePair tau{0.0, 0.0};
    tau[input_joint] = u;
    const JointAccel acc = forward_dynamics(frictionless, x, tau);
    return {x.qd1, x.qd2, acc.qdd1, acc.qdd2};
  };

  for (int j = 0; j < 4; ++j) {
    State plus = x_star, minus = x_star;
    double* fields_plus[4] = {&plus.q1, &plus.q2, &plus.qd1, &plus.qd2};
    double* fields_minus[4] = {&minus.q1, &minus.q2, &minus.qd1, &minus.qd2};
    *fields_plus[j] += h;
    *fields_minus[j] -= h;
    const Vec4 fp = f(plus, 0.0);
    const Vec4 fm = f(minus, 0.0);
    for (int i = 0; i < 4; ++i) a_out[i * 4 + j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  const Vec4 fp = f(x_star, h);
  const Vec4 fm = f(x_star, -h);
  for (int i = 0; i < 4; ++i) b_out[i] = (fp[i] - fm[i]) / (2.0 * h);
}

// Exact-to-roundoff discretization via the matrix exponential series:
// Ad = exp(A dt), Bd = (sum_k A^k dt^(k+1) / (k+1)!) B.
void discretize(const Mat4& a, const Vec4& b, double dt, Mat4& ad, Vec4& bd) {
  Mat4 term{};  // A^k dt^k / k!, starts as I
  for (int i = 0; i < 4; ++i) term[i * 4 + i] = 1.0;

  ad = term;
  Mat4 integral = term;  // sum A^k dt^k / (k+1)!
  for (int k = 1; k <= 24; ++k) {
    term = matmul(term, a);
    for (double& v : term) v *= dt / static_cast<double>(k);
    for (int i = 0; i < 16; ++i) {
      ad[i] += term[i];
      integral[i] += term[i] / static_cast<double>(k + 1);
    }
  }
  const Vec4 ib = matvec4(integral, b);
  for (int i = 0; i < 4; ++i) bd[i] = dt * ib[i];
}

// One Riccati recursion step for the discrete ARE with scalar input:
// P' = Q + Ad^T P Ad - (Ad^T P Bd)(R + Bd^T P Bd)^(-1) (Bd^T P Ad).
Mat4 riccati_step(const Mat4& p, const Mat4& ad, const Vec4& bd, const Mat4& q,
                  double r) {
  const Mat4 at = transpose(ad);
  const Mat4 pa = matmul(p, ad);
  const Vec4 pb = matvec4(p, bd);
  double btpb = 0.0;
  for (int i = 0; i < 4; ++i) btpb += bd[i] * pb[i];

  Vec4 btpa{};  // row vector Bd^T P Ad
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) btpa[j] += bd[i] * pa[i * 4 + j];

  const Vec4 atpb = matvec4(at, pb);
  Mat4 next = matmul(at, pa);
  const double denom = r + btpb;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      next[i * 4 + j] += q[i * 4 + j] - atpb[i] * btpa[j] / denom;
  return next;
}

double frobenius_diff(const Mat4& a, const Mat4& b) {
  double sum = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace

EnergyLqrController::EnergyLqrController(RobotKind kind, const ModelParams& p,
                                         const EnergyLqrConfig& config)
    : kind_(kind), params_(p), config_(config) {
  params_.validate();
  upright_energy_ =
      potential_energy(params_, State{std::numbers::pi, 0.0, 0.0, 0.0});

  Mat4 a{};
  Vec4 b{};
  linearize_upright(params_, active_joint(kind_), a, b);

  Mat4 ad{};
  Vec4 bd{};
  discretize(a, b, config_.lqr_dt, ad, bd);

  // The LQR gain is invariant under uniform scaling of (Q, R); solving with
  // rescaled costs keeps P small enough that the Riccati fixed point can be
  // met to tight absolute tolerance. The catch-basin thresholds are tuned
  // against the rescaled quadratic form.
  constexpr double cost_scale = 1.0e-4;
  const double r_cost = config_.input_cost * cost_scale;
  Mat4 q{};
  for (int i = 0; i < 4; ++i) q[i * 4 + i] = config_.state_cost[i] * cost_scale;

  Mat4 pmat = q;
  bool converged = false;
  for (int it = 0; it < 200000; ++it) {
    const Mat4 next = riccati_step(pmat, ad, bd, q, r_cost);
    const double diff = frobenius_diff(next, pmat);
    pmat = next;
    if (diff < 1.0e-13 * (1.0 + pmat[0])) {
      converged = true;
      break;
    }
    if (!std::isfinite(diff)) break;
  }
  residual_ = frobenius_diff(
      riccati_step(pmat, ad, bd, q, r_cost), pmat);
  if (!converged || !std::isfinite(residual_) || residual_ > 1.0e-8)
    throw std::runtime_error("EnergyLqrController: Riccati iteration failed");

  riccati_ = pmat;
  const Vec4 pb = matvec4(pmat, bd);
  double btpb = 0.0;
  for (int i = 0; i < 4; ++i) btpb += bd[i] * pb[i];
  const Mat4 pa = matmul(pmat, ad);
  for (int j = 0; j < 4; ++j) {
    double v = 0.0;
    for (int i = 0; i < 4; ++i) v += bd[i] * pa[i * 4 + j];
    gain_[j] = v / (r_cost + btpb);
  }
  reset();
}

void EnergyLqrController::reset() {
  fault_ = false;
  balancing_ = false;
}

double EnergyLqrController::lyapunov_cost(const Vec4& delta) const {
  double cost = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      cost += delta[i] * riccati_[i * 4 + j] * delta[j];
  return cost;
}

double EnergyLqrController::balance_cost(const State& s) const {
  return lyapunov_cost({wrap_pi(s.q1 - std::numbers::pi), wrap_pi(s.q2), s.qd1,
                        s.qd2});
}

TorquePair EnergyLqrController::compute_control(const State& measured,
                                                double /*t*/) {
  const int act = active_joint(kind_);
  const double limit = params_.tau_limit(act);

  const Vec4 delta{wrap_pi(measured.q1 - std::numbers::pi), wrap_pi(measured.q2),
                   measured.qd1, measured.qd2};
  const double cost = lyapunov_cost(delta);

  if (balancing_ && cost > config_.exit_cost) balancing_ = false;
  if (!balancing_ && cost < config_.switch_cost) balancing_ = true;

  double u;
  if (balancing_) {
    u = 0.0;
    for (int i = 0; i < 4; ++i) u -= gain_[i] * delta[i];
  } else {
    if (kind_ == RobotKind::pendubot) {
      const double energy_error =
          upright_energy_ - total_energy(params_, measured);
      u = config_.k_energy * energy_error * measured.qd1 -
          config_.k_pos * delta[0] - config_.k_damp * measured.qd1;
    } else {
      const double elbow_ref =
          -config_.swing_amplitude * std::atan(measured.qd1);
      u = -config_.servo_p * wrap_pi(measured.q2 - elbow_ref) -
          config_.servo_d * measured.qd2;
    }
    // The rest equilibrium can have zero error in the active coordinate;
    // nudge out of it.
    if (std::fabs(measured.qd1) + std::fabs(measured.qd2) < config_.rest_velocity &&
        std::fabs(u) < config_.kick_torque)
      u += config_.kick_torque;
  }

  TorquePair command{0.0, 0.0};
  command[act] = std::clamp(u, -limit, limit);
  return command;
}

}  // namespace dpbench
