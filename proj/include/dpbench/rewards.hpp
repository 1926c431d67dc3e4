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

/// Selects the fixed per-robot constants of the history-based reward:
/// pendubot uses beta = 0.1 with qd1, acrobot beta = 0.025 with qd2.
enum class RewardPreset { pendubot, acrobot };

/// Upright-tracking reward with action regularization:
///
///   R = -0.05 ((q1 - pi)^2 + q2^2)
///       - [ 0.02 (qd1^2 + qd2^2) + 0.25 (a^2 + 2|a|)
///           + 0.02 |(a - a_prev) / dt| + 0.05 (qd_i a) beta ]
///
/// a is the active joint's commanded torque normalized by the torque limit.
/// Non-positive everywhere; exactly 0 at the upright rest with a = a_prev = 0.
/// Throws on dt <= 0.
double reward_history_sac(const State& s, double a, double a_prev, double dt,
                          RewardPreset preset);

/// Two-branch surrogate reward switching on end-effector height.
/// V is a configurable constant (default 0, toggleable); T is the elapsed
/// trial time; all coefficients are tunable.
struct EvolsacRewardConfig {
  double alpha = 1.0;
  double beta = 0.05;
  double rho1 = 0.1;
  double rho2 = 0.01;
  double phi1 = 0.1;
  double phi2 = 0.01;
  double eta = 0.01;
  double y_th = 0.45;      ///< branch threshold on end-effector height [m]
  double v = 0.0;          ///< the V term, shared by both branches
  bool include_v = true;   ///< disable to force V = 0 regardless of `v`
};

/// Above threshold: V + alpha (1 + cos q2)^2 - beta T - rho1 a^2 - phi1 da.
/// Below:           V - rho2 a^2 - phi2 da - eta (qd1^2 + qd2^2).
/// delta_a is the caller-supplied |a - a_prev|; t_elapsed supplies T.
double reward_evolsac(const ModelParams& p, const State& s, double a,
                      double delta_a, double t_elapsed,
                      const EvolsacRewardConfig& config);

}  // namespace dpbench
