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

#include "dpbench/model.hpp"

namespace dpbench {

/// Slope of the smooth Coulomb model cf * tanh(kFrictionSmoothing * qd).
/// A hard sign() would make the vector field discontinuous at qd = 0 and
/// defeat the fixed-step integrator.
inline constexpr double kFrictionSmoothing = 100.0;

/// Torque budget available on the passive joint for friction compensation.
inline constexpr double kPassiveCompensationLimit = 0.5;

struct JointAccel {
  double qdd1 = 0.0;
  double qdd2 = 0.0;
};

/// Joint friction torque b*qd + cf*tanh(100*qd).
double friction_torque(double b, double cf, double qd);

/// Accelerations solving M(q) qdd + C(q,qd) qd + G(q) + F(qd) = tau.
/// Throws std::domain_error on a non-finite state (diverged simulation).
JointAccel forward_dynamics(const ModelParams& p, const State& s,
                            const TorquePair& tau);

/// Mass matrix entries (symmetric 2x2: m11, m12, m22) at configuration q.
std::array<double, 3> mass_matrix(const ModelParams& p, double q2);

/// One fixed-step RK4 step with tau held constant over the step.
State rk4_step(const ModelParams& p, const State& s, const TorquePair& tau,
               double dt);

/// Height of the end effector above the base: -l1 cos q1 - l2 cos(q1+q2).
double end_effector_height(const ModelParams& p, const State& s);

/// Total mechanical energy T + V with the potential datum at the base.
double total_energy(const ModelParams& p, const State& s);

/// Potential energy alone (used by the energy-shaping controller).
double potential_energy(const ModelParams& p, const State& s);

/// Maps a commanded torque pair onto the plant's actuation:
/// the active joint is clamped to its tau_limit, the passive joint carries
/// only a friction-compensation torque clamped to +-0.5 N·m. The commanded
/// value on the passive joint is discarded.
TorquePair apply_actuation(RobotKind kind, const TorquePair& commanded,
                           const ModelParams& p, const State& s);

/// First-order motor response tau_prev + k_resp * (tau_des - tau_prev),
/// elementwise. k_resp = 1 passes tau_des through exactly.
TorquePair responsive_torque(const TorquePair& tau_prev,
                             const TorquePair& tau_des, double k_resp);

}  // namespace dpbench
