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

#include "dpbench/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpbench {

void ModelParams::validate() const {
  auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
  if (!(m1 > 0.0 && m2 > 0.0)) fail("ModelParams: masses must be positive");
  if (!(l1 > 0.0 && l2 > 0.0)) fail("ModelParams: lengths must be positive");
  if (!(I1 > 0.0 && I2 > 0.0)) fail("ModelParams: inertias must be positive");
  if (!(r1 > 0.0 && r1 <= l1) || !(r2 > 0.0 && r2 <= l2))
    fail("ModelParams: center of mass must satisfy 0 < r_i <= l_i");
  if (b1 < 0.0 || b2 < 0.0 || cf1 < 0.0 || cf2 < 0.0)
    fail("ModelParams: friction coefficients must be non-negative");
  if (tau_limit1 < 0.0 || tau_limit2 < 0.0)
    fail("ModelParams: torque limits must be non-negative");
  if (!(g > 0.0)) fail("ModelParams: gravity must be positive");
}

std::string_view to_string(RobotKind kind) {
  return kind == RobotKind::acrobot ? "acrobot" : "pendubot";
}

RobotKind robot_kind_from_string(std::string_view name) {
  if (name == "acrobot") return RobotKind::acrobot;
  if (name == "pendubot") return RobotKind::pendubot;
  throw std::invalid_argument("unknown robot kind: " + std::string(name));
}

double friction_torque(double b, double cf, double qd) {
  return b * qd + cf * std::tanh(kFrictionSmoothing * qd);
}

std::array<double, 3> mass_matrix(const ModelParams& p, double q2) {
  const double c2 = std::cos(q2);
  const double coupling = p.m2 * p.l1 * p.r2 * c2;
  const double m11 = p.I1 + p.I2 + p.m2 * p.l1 * p.l1 + 2.0 * coupling;
  const double m12 = p.I2 + coupling;
  const double m22 = p.I2;
  return {m11, m12, m22};
}

JointAccel forward_dynamics(const ModelParams& p, const State& s,
                            const TorquePair& tau) {
  if (!s.finite())
    throw std::domain_error("forward_dynamics: non-finite state (diverged)");

  const auto [m11, m12, m22] = mass_matrix(p, s.q2);

  // Coriolis/centrifugal vector, h = m2 l1 r2 sin(q2).
  const double h = p.m2 * p.l1 * p.r2 * std::sin(s.q2);
  const double c1 = -h * s.qd2 * (2.0 * s.qd1 + s.qd2);
  const double c2v = h * s.qd1 * s.qd1;

  // Gravity, with q1 measured from the hanging position.
  const double s1 = std::sin(s.q1);
  const double s12 = std::sin(s.q1 + s.q2);
  const double g1 = (p.m1 * p.r1 + p.m2 * p.l1) * p.g * s1 + p.m2 * p.r2 * p.g * s12;
  const double g2 = p.m2 * p.r2 * p.g * s12;

  const double f1 = friction_torque(p.b1, p.cf1, s.qd1);
  const double f2 = friction_torque(p.b2, p.cf2, s.qd2);

  const double rhs1 = tau[0] - c1 - g1 - f1;
  const double rhs2 = tau[1] - c2v - g2 - f2;

  const double det = m11 * m22 - m12 * m12;
  return {(m22 * rhs1 - m12 * rhs2) / det, (m11 * rhs2 - m12 * rhs1) / det};
}

State rk4_step(const ModelParams& p, const State& s, const TorquePair& tau,
               double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be > 0");

  auto deriv = [&](const State& x) {
    const JointAccel a = forward_dynamics(p, x, tau);
    return std::array<double, 4>{x.qd1, x.qd2, a.qdd1, a.qdd2};
  };
  auto advance = [&](const State& x, const std::array<double, 4>& k, double h) {
    return State{x.q1 + h * k[0], x.q2 + h * k[1], x.qd1 + h * k[2],
                 x.qd2 + h * k[3]};
  };

  const auto k1 = deriv(s);
  const auto k2 = deriv(advance(s, k1, 0.5 * dt));
  const auto k3 = deriv(advance(s, k2, 0.5 * dt));
  const auto k4 = deriv(advance(s, k3, dt));

  const double w = dt / 6.0;
  return {s.q1 + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
          s.q2 + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
          s.qd1 + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
          s.qd2 + w * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])};
}

double end_effector_height(const ModelParams& p, const State& s) {
  return -p.l1 * std::cos(s.q1) - p.l2 * std::cos(s.q1 + s.q2);
}

double potential_energy(const ModelParams& p, const State& s) {
  return -(p.m1 * p.r1 + p.m2 * p.l1) * p.g * std::cos(s.q1) -
         p.m2 * p.r2 * p.g * std::cos(s.q1 + s.q2);
}

double total_energy(const ModelParams& p, const State& s) {
  const auto [m11, m12, m22] = mass_matrix(p, s.q2);
  const double kinetic = 0.5 * (m11 * s.qd1 * s.qd1 + m22 * s.qd2 * s.qd2) +
                         m12 * s.qd1 * s.qd2;
  return kinetic + potential_energy(p, s);
}

TorquePair apply_actuation(RobotKind kind, const TorquePair& commanded,
                           const ModelParams& p, const State& s) {
  const int act = active_joint(kind);
  const int pas = passive_joint(kind);

  TorquePair applied{0.0, 0.0};
  applied[act] = std::clamp(commanded[act], -p.tau_limit(act), p.tau_limit(act));

  const double compensation =
      pas == 0 ? friction_torque(p.b1, p.cf1, s.qd1)
               : friction_torque(p.b2, p.cf2, s.qd2);
  applied[pas] = std::clamp(compensation, -kPassiveCompensationLimit,
                            kPassiveCompensationLimit);
  return applied;
}

TorquePair responsive_torque(const TorquePair& tau_prev,
                             const TorquePair& tau_des, double k_resp) {
  if (!(k_resp > 0.0 && k_resp <= 1.0))
    throw std::invalid_argument("responsive_torque: k_resp must be in (0, 1]");
  if (k_resp == 1.0) return tau_des;  // exact passthrough, no rounding
  return {tau_prev[0] + k_resp * (tau_des[0] - tau_prev[0]),
          tau_prev[1] + k_resp * (tau_des[1] - tau_prev[1])};
}

}  // namespace dpbench
