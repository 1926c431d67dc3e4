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
#include <functional>
#include <span>
#include <vector>

namespace dpbench {

/// Progress record shared by the evolutionary optimizers.
struct ProgressRow {
  std::size_t generation = 0;
  double best = 0.0;
  double mean = 0.0;
};

/// Separable natural evolution strategy with per-coordinate log-normal
/// step-size adaptation.
///
/// Candidates are theta + sigma o s_k with s_k ~ N(0, I). After ranking by
/// fitness (higher is better), the utility-weighted natural gradients drive
///   theta  += sigma o sum_k u_k s_k
///   sigma  o= exp(tau_c * sum_k u_k (s_k^2 - 1))     (per coordinate)
/// plus an optional global log-normal factor scaled by tau_g. The utilities
/// are a fixed rank-based vector summing to zero: updates depend only on the
/// fitness ordering, never on its absolute level.
struct SnesConfig {
  std::size_t population = 0;  ///< 0 selects 4 + floor(3 ln n)
  double sigma_init = 0.3;
  double lr_global = 0.0;      ///< tau_g; 0 disables the global factor
  double lr_coord = -1.0;      ///< tau_c; < 0 selects (3 + ln n) / (10 sqrt n)
  std::uint64_t seed = 0;
};

struct SnesState {
  std::vector<double> mean;
  std::vector<double> sigma;
  double lr_global = 0.0;
  double lr_coord = 0.0;
  std::size_t population = 0;
  std::uint64_t seed = 0;
  std::uint64_t generation = 0;

  std::vector<double> best_params;
  double best_fitness = 0.0;
  bool has_best = false;

  static SnesState init(std::vector<double> mean0, const SnesConfig& config);
};

/// Maps a candidate parameter vector to a scalar fitness (higher is better).
using FitnessFn = std::function<double(std::span<const double>)>;

/// Source of standard-normal draws; injectable so tests can zero it out.
using NormalSource = std::function<double()>;

/// Fixed rank-based utility vector of length lambda (descending fitness
/// order), shifted to sum exactly to zero.
std::vector<double> snes_utilities(std::size_t lambda);

/// Advances the state by one generation (population fitness evaluations,
/// optionally in parallel; sampling and the update are serial).
/// Non-finite fitness values rank worst. Deterministic given the state.
ProgressRow snes_step(SnesState& state, const FitnessFn& fitness,
                      unsigned threads = 1);

/// As snes_step but drawing every Gaussian from `normals` (test hook).
ProgressRow snes_step_with_source(SnesState& state, const FitnessFn& fitness,
                                  const NormalSource& normals,
                                  unsigned threads = 1);

}  // namespace dpbench
