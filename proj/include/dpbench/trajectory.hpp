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

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "dpbench/model.hpp"

namespace dpbench {

/// Uniformly sampled closed-loop record. Row i holds the state at t_i and
/// the torques applied over [t_i, t_{i+1}); the final row duplicates the
/// last applied torque (zero-order hold) so all columns share one length.
struct Trajectory {
  double dt = 0.0;
  std::vector<double> time;
  std::vector<double> q1, q2, qd1, qd2;
  std::vector<double> tau1, tau2;            ///< applied torques
  std::vector<double> tau_des1, tau_des2;    ///< desired (pre-imperfection)
  std::vector<double> tau_pert1, tau_pert2;  ///< external perturbation
  bool diverged = false;  ///< simulation blew up; trajectory ends early

  std::size_t size() const { return time.size(); }
  /// Number of integration steps (size() - 1 for a non-empty trajectory).
  std::size_t steps() const { return time.empty() ? 0 : time.size() - 1; }

  State state_at(std::size_t i) const {
    return {q1[i], q2[i], qd1[i], qd2[i]};
  }
  State final_state() const { return state_at(size() - 1); }
  double final_time() const { return time.empty() ? 0.0 : time.back(); }

  void reserve(std::size_t rows);
  void push_row(double t, const State& s, const TorquePair& applied,
                const TorquePair& desired, const TorquePair& perturbation);
};

/// Writes `time,pos1,pos2,vel1,vel2,tau1,tau2` rows; the extended form
/// appends `tau_des1,tau_des2,tau_pert1,tau_pert2`. Values are printed with
/// 17 significant digits so a round-trip reproduces every double exactly.
void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& traj, bool extended = false);

/// Reads either CSV form; missing extended columns load as zeros.
/// Throws std::runtime_error on malformed input.
Trajectory read_trajectory_csv(const std::filesystem::path& path);

}  // namespace dpbench
