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

#include "dpbench/scoring.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dpbench/dynamics.hpp"
#include "dpbench/kernels.hpp"

namespace dpbench {

WeightSet WeightSet::simulation() {
  constexpr double pi = std::numbers::pi;
  return {pi / 20.0, pi / 60.0, pi / 20.0, 10.0 * pi, pi / 400.0};
}

WeightSet WeightSet::hardware() {
  constexpr double pi = std::numbers::pi;
  return {pi / 20.0, pi / 60.0, pi / 100.0, pi / 4.0, pi / 400.0};
}

bool check_success(const Trajectory& traj, const ModelParams& p,
                   double threshold) {
  if (traj.size() == 0)
    throw std::invalid_argument("check_success: empty trajectory");
  if (traj.diverged) return false;
  return end_effector_height(p, traj.final_state()) > threshold;
}

double swingup_time(const Trajectory& traj, const ModelParams& p,
                    double threshold) {
  if (traj.size() == 0)
    throw std::invalid_argument("swingup_time: empty trajectory");

  // Scan backwards for the last sample at or below the threshold.
  std::size_t i = traj.size();
  while (i > 0) {
    if (end_effector_height(p, traj.state_at(i - 1)) <= threshold) break;
    --i;
  }
  if (i == traj.size()) return traj.final_time();  // never above at the end
  return traj.time[i];  // i == 0 means upright from the start
}

Criteria compute_criteria(const Trajectory& traj, const ModelParams& p,
                          double threshold) {
  const std::size_t n = traj.size();
  if (n < 2)
    throw std::invalid_argument("compute_criteria: need at least 2 samples");
  const std::size_t steps = n - 1;
  const double dt = traj.dt;

  Criteria c;
  c.success = check_success(traj, p, threshold);
  c.swingup_time = swingup_time(traj, p, threshold);

  c.energy = (kernels::sum_abs_prod(traj.tau1.data(), traj.qd1.data(), steps) +
              kernels::sum_abs_prod(traj.tau2.data(), traj.qd2.data(), steps)) *
             dt;
  c.torque_cost = (kernels::sum_sq(traj.tau1.data(), steps) +
                   kernels::sum_sq(traj.tau2.data(), steps)) *
                  dt;
  c.velocity_cost = (kernels::sum_sq(traj.qd1.data(), steps) +
                     kernels::sum_sq(traj.qd2.data(), steps)) *
                    dt;

  double smoothness = 0.0;
  for (std::size_t i = 0; i + 1 < steps; ++i) {
    const double d1 = traj.tau1[i + 1] - traj.tau1[i];
    const double d2 = traj.tau2[i + 1] - traj.tau2[i];
    smoothness += std::sqrt(d1 * d1 + d2 * d2);
  }
  c.torque_smoothness = steps > 1 ? smoothness / static_cast<double>(steps - 1)
                                  : 0.0;
  return c;
}

double performance_score(const Criteria& c, const WeightSet& w) {
  if (!(w.time > 0.0 && w.energy > 0.0 && w.torque_cost > 0.0 &&
        w.torque_smoothness > 0.0 && w.velocity > 0.0))
    throw std::invalid_argument("performance_score: weights must be positive");
  if (!c.success) return 0.0;
  const double penalty = std::tanh(w.time * c.swingup_time) +
                         std::tanh(w.energy * c.energy) +
                         std::tanh(w.torque_cost * c.torque_cost) +
                         std::tanh(w.torque_smoothness * c.torque_smoothness) +
                         std::tanh(w.velocity * c.velocity_cost);
  return 1.0 - penalty / 5.0;
}

double average_score(std::span<const ScoreReport> reports) {
  if (reports.empty())
    throw std::invalid_argument("average_score: empty report list");
  double sum = 0.0;
  for (const auto& r : reports) sum += r.score;
  return sum / static_cast<double>(reports.size());
}

ScoreReport score_trajectory(const Trajectory& traj, const ModelParams& p,
                             const WeightSet& w, std::string weight_preset,
                             double threshold) {
  ScoreReport report;
  report.criteria = compute_criteria(traj, p, threshold);
  report.weights = w;
  report.weight_preset = std::move(weight_preset);
  report.score = performance_score(report.criteria, w);
  return report;
}

}  // namespace dpbench
