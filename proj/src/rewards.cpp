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

#include "dpbench/rewards.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dpbench/dynamics.hpp"

namespace dpbench {

double reward_history_sac(const State& s, double a, double a_prev, double dt,
                          RewardPreset preset) {
  if (!(dt > 0.0))
    throw std::invalid_argument("reward_history_sac: dt must be > 0");

  const double beta = preset == RewardPreset::pendubot ? 0.1 : 0.025;
  const double qd_sel = preset == RewardPreset::pendubot ? s.qd1 : s.qd2;

  const double d1 = s.q1 - std::numbers::pi;
  const double position = 0.05 * (d1 * d1 + s.q2 * s.q2);
  const double regularization = 0.02 * (s.qd1 * s.qd1 + s.qd2 * s.qd2) +
                                0.25 * (a * a + 2.0 * std::fabs(a)) +
                                0.02 * std::fabs((a - a_prev) / dt) +
                                0.05 * (qd_sel * a) * beta;
  return -position - regularization;
}

double reward_evolsac(const ModelParams& p, const State& s, double a,
                      double delta_a, double t_elapsed,
                      const EvolsacRewardConfig& config) {
  const double v = config.include_v ? config.v : 0.0;
  const double y = end_effector_height(p, s);
  if (y > config.y_th) {
    const double upright = 1.0 + std::cos(s.q2);
    return v + config.alpha * upright * upright - config.beta * t_elapsed -
           config.rho1 * a * a - config.phi1 * delta_a;
  }
  return v - config.rho2 * a * a - config.phi2 * delta_a -
         config.eta * (s.qd1 * s.qd1 + s.qd2 * s.qd2);
}

}  // namespace dpbench
