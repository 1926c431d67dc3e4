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

#include <span>
#include <string>

#include "dpbench/model.hpp"
#include "dpbench/trajectory.hpp"

namespace dpbench {

/// Default end-effector success height above the base [m].
inline constexpr double kDefaultSuccessThreshold = 0.45;

/// Raw criteria extracted from one trial.
///
/// Definitions (applied torques, true velocities, uniform dt):
///   energy            = sum_t sum_i |tau_i(t) * qd_i(t)| * dt          [J]
///   torque_cost       = sum_t sum_i tau_i(t)^2 * dt                    [N^2 m^2 s]
///   torque_smoothness = mean_t ||tau(t+1) - tau(t)||_2                 [N m]
///   velocity_cost     = sum_t sum_i qd_i(t)^2 * dt                     [rad^2/s]
struct Criteria {
  bool success = false;
  double swingup_time = 0.0;
  double energy = 0.0;
  double torque_cost = 0.0;
  double torque_smoothness = 0.0;
  double velocity_cost = 0.0;
};

/// Normalization weights for the five criteria (reciprocal units).
struct WeightSet {
  double time = 0.0;
  double energy = 0.0;
  double torque_cost = 0.0;
  double torque_smoothness = 0.0;
  double velocity = 0.0;

  static WeightSet simulation();  ///< pi/20, pi/60, pi/20, 10*pi, pi/400
  static WeightSet hardware();    ///< pi/20, pi/60, pi/100, pi/4, pi/400
};

struct ScoreReport {
  Criteria criteria;
  WeightSet weights;
  std::string weight_preset;  ///< "sim", "hardware" or "custom"
  double score = 0.0;
};

/// True iff the end effector is above the threshold at the final sample
/// (strict inequality). Throws on an empty trajectory. A diverged
/// trajectory never counts as a success.
bool check_success(const Trajectory& traj, const ModelParams& p,
                   double threshold = kDefaultSuccessThreshold);

/// Earliest time from which the end effector stays above the threshold for
/// the rest of the trial; the trial length when that never happens.
double swingup_time(const Trajectory& traj, const ModelParams& p,
                    double threshold = kDefaultSuccessThreshold);

/// All five criteria plus the success flag. Requires >= 2 samples.
Criteria compute_criteria(const Trajectory& traj, const ModelParams& p,
                          double threshold = kDefaultSuccessThreshold);

/// S_p = c_succ * [1 - (1/5) * sum_i tanh(w_i c_i)], in [0, 1].
double performance_score(const Criteria& c, const WeightSet& w);

/// Arithmetic mean of the report scores. Throws on an empty list.
double average_score(std::span<const ScoreReport> reports);

ScoreReport score_trajectory(const Trajectory& traj, const ModelParams& p,
                             const WeightSet& w, std::string weight_preset,
                             double threshold = kDefaultSuccessThreshold);

}  // namespace dpbench
