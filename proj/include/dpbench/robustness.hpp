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
#include <string>
#include <vector>

#include "dpbench/controller.hpp"
#include "dpbench/model.hpp"
#include "dpbench/perturbation.hpp"
#include "dpbench/scoring.hpp"

namespace dpbench {

/// Scalar imperfection criteria swept over a severity grid.
enum class SweepKind { vel_noise, torque_noise, response, delay };

std::string_view to_string(SweepKind kind);

/// Severity ranges for the six criteria. Every grid runs from the benign
/// endpoint (nominal behavior) to the configured extreme in `steps` points.
struct SweepRanges {
  int steps = 21;
  double vel_noise_max = 0.5;     ///< [rad/s]
  double torque_noise_max = 0.5;  ///< [N m]
  double k_resp_floor = 0.2;      ///< swept 1.0 -> floor
  double delay_max = 0.05;        ///< [s]
  double model_scale_min = 0.75;
  double model_scale_max = 1.25;
  int perturbation_profiles = 50;
  PerturbationConfig perturbation;

  void validate() const;
};

struct RobustnessOptions {
  double t_final = 10.0;
  double dt = 0.002;
  double threshold = kDefaultSuccessThreshold;
  State x0{};
  std::uint64_t seed = 0;
  unsigned threads = 1;
  SweepRanges ranges;
};

/// One rollout of a sweep, for the optional per-point CSV.
struct SweepPoint {
  std::string criterion;
  double severity = 0.0;
  bool success = false;
};

/// Success fractions of the six criteria and their mean.
struct RobustnessReport {
  double model_inaccuracy = 0.0;
  double velocity_noise = 0.0;
  double torque_noise = 0.0;
  double torque_response = 0.0;
  double time_delay = 0.0;
  double perturbation = 0.0;
  double final_score = 0.0;
};

/// Model parameters varied one at a time by the model-inaccuracy criterion.
const std::vector<std::string>& swept_model_parameters();

/// Scales each independent model parameter across the grid in the simulated
/// plant while the controller (built from the factory) keeps the nominal
/// parameters. Runs steps * |swept params| rollouts.
double sweep_model_inaccuracies(const ControllerFactory& factory,
                                RobotKind kind, const ModelParams& nominal,
                                const RobustnessOptions& options,
                                std::vector<SweepPoint>* log = nullptr);

/// 21 rollouts along one scalar severity grid; returns the success fraction.
double sweep_scalar(const ControllerFactory& factory, RobotKind kind,
                    const ModelParams& nominal, SweepKind kind_of_sweep,
                    const RobustnessOptions& options,
                    std::vector<SweepPoint>* log = nullptr);

/// 50 rollouts with seeded random perturbation profiles.
double eval_perturbations(const ControllerFactory& factory, RobotKind kind,
                          const ModelParams& nominal,
                          const RobustnessOptions& options,
                          std::vector<SweepPoint>* log = nullptr);

/// Mean of the six fractions. Throws if any input leaves [0, 1].
RobustnessReport robustness_score(double model_inaccuracy,
                                  double velocity_noise, double torque_noise,
                                  double torque_response, double time_delay,
                                  double perturbation);

/// Runs all six criteria and aggregates them.
RobustnessReport evaluate_robustness(const ControllerFactory& factory,
                                     RobotKind kind, const ModelParams& nominal,
                                     const RobustnessOptions& options,
                                     std::vector<SweepPoint>* log = nullptr);

}  // namespace dpbench
