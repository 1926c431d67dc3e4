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

#include "dpbench/snes.hpp"  // ProgressRow

namespace dpbench {

/// DE/rand/1/bin with bound clipping.
struct DeConfig {
  std::size_t population = 0;   ///< 0 selects 15 * dim
  double weight_f = 0.7;        ///< differential weight, 0 < F < 2
  double crossover = 0.9;       ///< crossover rate CR in [0, 1]
  std::vector<double> lower;    ///< per-dimension bounds, finite
  std::vector<double> upper;
  std::size_t max_generations = 300;
  double tolerance = 0.0;       ///< stop once best cost <= tolerance
  std::uint64_t seed = 0;
  unsigned threads = 1;

  void validate() const;
};

using CostFn = std::function<double(std::span<const double>)>;

struct DeResult {
  std::vector<double> best;
  double best_cost = 0.0;
  std::vector<ProgressRow> history;  ///< per generation: best and mean cost
  std::size_t evaluations = 0;
};

/// Minimizes the cost over the box. Deterministic given the seed; population
/// members never leave the bounds. Non-finite costs are treated as +inf.
DeResult differential_evolution(const CostFn& cost, const DeConfig& config);

}  // namespace dpbench
