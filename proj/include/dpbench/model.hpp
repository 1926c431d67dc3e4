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

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace dpbench {

/// Commanded or applied torque on (joint 1, joint 2), in N·m.
using TorquePair = std::array<double, 2>;

/// Physical parameterization of the double pendulum plant.
///
/// Angles are measured per-joint: q1 from the downward-hanging vertical and
/// q2 relative to link 1. Inertias I1/I2 are taken about the respective
/// joint axes, so a point mass at distance r has I = m r^2.
struct ModelParams {
  double m1 = 0.6;   ///< link 1 mass [kg]
  double m2 = 0.6;   ///< link 2 mass incl. attached end mass [kg]
  double l1 = 0.2;   ///< link 1 length [m]
  double l2 = 0.3;   ///< link 2 length [m]
  double r1 = 0.15;  ///< link 1 center of mass distance [m]
  double r2 = 0.22;  ///< link 2 center of mass distance [m]
  double I1 = 0.015; ///< link 1 inertia about joint 1 [kg m^2]
  double I2 = 0.035; ///< link 2 inertia about joint 2 [kg m^2]
  double b1 = 0.005; ///< joint 1 viscous damping [N m s/rad]
  double b2 = 0.005; ///< joint 2 viscous damping [N m s/rad]
  double cf1 = 0.02; ///< joint 1 Coulomb friction [N m]
  double cf2 = 0.02; ///< joint 2 Coulomb friction [N m]
  double g = 9.81;   ///< gravity [m/s^2]
  double tau_limit1 = 6.0;  ///< joint 1 actuator bound [N m]
  double tau_limit2 = 6.0;  ///< joint 2 actuator bound [N m]

  double tau_limit(int joint) const { return joint == 0 ? tau_limit1 : tau_limit2; }

  /// Throws std::invalid_argument when any physical invariant is violated
  /// (positive masses/lengths/inertias, 0 < r_i <= l_i, non-negative
  /// friction and torque bounds).
  void validate() const;
};

/// Joint-space state. q1 from the downward vertical, q2 relative to link 1.
struct State {
  double q1 = 0.0;
  double q2 = 0.0;
  double qd1 = 0.0;
  double qd2 = 0.0;

  bool finite() const {
    return std::isfinite(q1) && std::isfinite(q2) && std::isfinite(qd1) &&
           std::isfinite(qd2);
  }
};

/// Which joint carries the actuator. The other joint is passive and may only
/// receive the bounded friction-compensation torque.
enum class RobotKind { acrobot, pendubot };

inline int active_joint(RobotKind kind) {
  return kind == RobotKind::pendubot ? 0 : 1;
}
inline int passive_joint(RobotKind kind) { return 1 - active_joint(kind); }

std::string_view to_string(RobotKind kind);
RobotKind robot_kind_from_string(std::string_view name);

}  // namespace dpbench
