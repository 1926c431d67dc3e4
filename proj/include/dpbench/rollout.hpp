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

#include <cstdint>
#include <optional>

#include "dpbench/controller.hpp"
#include "dpbench/model.hpp"
#include "dpbench/perturbation.hpp"
#include "dpbench/trajectory.hpp"

namespace dpbench {

/// The six imperfection knobs of the robustness protocol. Defaults are the
/// identity pipeline: a rollout with this config is bitwise identical to a
/// plain simulation loop.
struct ImperfectionConfig {
  double vel_noise_sigma = 0.0;    ///< stddev on measured velocities [rad/s]
  double torque_noise_sigma = 0.0; ///< stddev on motor torque [N m]
  double k_resp = 1.0;             ///< responsiveness factor, (0, 1]
  double delay = 0.0;              ///< measurement delay [s]
  std::optional<PerturbationProfile> perturbation;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Closed-loop simulation of one trial.
///
/// Per step: the controller sees the delayed state with Gaussian velocity
/// noise; its command passes through actuation selection (active-joint clamp
/// plus bounded passive friction compensation), the first-order motor
/// response, Gaussian torque noise and perturbation addition; the sum is
/// clamped to the actuator bounds and held constant over one RK4 step.
///
/// The responsiveness filter state is the previous post-filter motor torque;
/// noise and perturbation are injected downstream of it.
///
/// Deterministic given the config's rng_seed. A non-finite or exploding
/// state ends the trajectory early with the diverged flag set.
Trajectory rollout(Controller& controller, RobotKind kind,
                   const ModelParams& p, const ImperfectionConfig& imp,
                   double t_final, double dt, const State& x0 = {});

}  // namespace dpbench
