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

#include <string>
#include <vector>

#include "dpbench/de.hpp"
#include "dpbench/model.hpp"
#include "dpbench/trajectory.hpp"

namespace dpbench {

/// Recorded torque-replay data: each trajectory supplies the initial state,
/// the applied torque series and the measured state series.
struct SysIdDataset {
  std::vector<Trajectory> recordings;
  double trim_horizon = 1.5;  ///< only the first seconds enter the cost

  void validate() const;
};

/// Importance-weighted squared trajectory error for two state series of
/// equal length T >= 2 (4 components per sample). The weight decreases
/// linearly from 1 at the first sample to 0.5 at the last:
///   J = sum_t sum_j (1 - 0.5 (t-1)/(T-1)) (sim_j[t] - real_j[t])^2
double weighted_state_error(const Trajectory& sim, const Trajectory& real,
                            std::size_t samples);

/// Replays each recording's torques through the candidate parameters from
/// the recorded initial state and sums the weighted errors over the series
/// trimmed to the first trim_horizon seconds.
double sysid_cost(const ModelParams& candidate, const SysIdDataset& data);

/// Which ModelParams fields the optimizer may vary.
///
/// The full parameterization is structurally unidentifiable in l2: the link
/// length only locates the end effector and never enters the joint-space
/// equations of motion. `point_mass_links` selects the reduced point-mass-rod
/// model, where candidate assembly also pins r_i = l_i and I_i = m_i l_i^2,
/// making {m1, m2, l1, l2} jointly identifiable.
struct SysIdOptions {
  std::vector<std::string> free_params{"m1", "m2", "l1", "l2"};
  double bound_scale = 0.5;  ///< bounds = nominal * (1 -+ bound_scale)
  bool point_mass_links = false;
  DeConfig de;               ///< bounds filled in from the nominal values
};

struct SysIdResult {
  ModelParams params;
  double cost = 0.0;
  std::vector<ProgressRow> history;
};

/// Fits the free parameters by differential evolution around the nominal.
SysIdResult sysid_fit(const ModelParams& nominal, const SysIdDataset& data,
                      const SysIdOptions& options);

/// k independent DE runs from distinct seeds, sorted by cost ascending.
/// Supports the multi-environment training strategy.
std::vector<SysIdResult> sysid_multi(const ModelParams& nominal,
                                     const SysIdDataset& data,
                                     const SysIdOptions& options,
                                     std::size_t k);

/// Named access to the identifiable ModelParams fields.
std::vector<std::string> model_param_names();
double get_model_param(const ModelParams& p, const std::string& name);
void set_model_param(ModelParams& p, const std::string& name, double value);

}  // namespace dpbench
