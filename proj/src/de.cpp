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

#include "dpbench/de.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpbench/parallel.hpp"
#include "dpbench/rng.hpp"

namespace dpbench {
namespace {

double sanitize(double cost) {
  return std::isfinite(cost) ? cost : std::numeric_limits<double>::infinity();
}

}  // namespace

void DeConfig::validate() const {
  if (lower.empty() || lower.size() != upper.size())
    throw std::invalid_argument("DeConfig: bounds missing or mismatched");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) ||
        !(lower[i] < upper[i]))
      throw std::invalid_argument("DeConfig: bounds must be finite, lo < hi");
  if (!(weight_f > 0.0 && weight_f < 2.0))
    throw std::invalid_argument("DeConfig: need 0 < F < 2");
  if (!(crossover >= 0.0 && crossover <= 1.0))
    throw std::invalid_argument("DeConfig: need 0 <= CR <= 1");
}

DeResult differential_evolution(const CostFn& cost, const DeConfig& config) {
  config.validate();
  const std::size_t dim = config.lower.size();
  const std::size_t np =
      config.population != 0 ? config.population : 15 * dim;
  if (np < 4) throw std::invalid_argument("DE: population must be >= 4");

  Rng rng(derive_seed(config.seed, "de-init"));

  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  for (auto& member : pop)
    for (std::size_t d = 0; d < dim; ++d)
      member[d] = rng.uniform(config.lower[d], config.upper[d]);

  std::vector<double> costs(np);
  parallel_for(np, config.threads,
               [&](std::size_t i) { costs[i] = sanitize(cost(pop[i])); });

  DeResult result;
  result.evaluations = np;

  auto record_best = [&](std::size_t generation) {
    double best = costs[0], sum = 0.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < np; ++i) {
      sum += costs[i];
      if (costs[i] < best) {
        best = costs[i];
        best_i = i;
      }
    }
    result.best = pop[best_i];
    result.best_cost = best;
    result.history.push_back(
        {generation, best, sum / static_cast<double>(np)});
  };
  record_best(0);

  std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
  std::vector<double> trial_costs(np);

  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    if (result.best_cost <= config.tolerance) break;

    Rng gen_rng(derive_seed(config.seed, "de-generation", gen));
    for (std::size_t i = 0; i < np; ++i) {
      // Three distinct members, all different from i.
      std::size_t r1, r2, r3;
      do r1 = gen_rng.uniform_index(np); while (r1 == i);
      do r2 = gen_rng.uniform_index(np); while (r2 == i || r2 == r1);
      do r3 = gen_rng.uniform_index(np); while (r3 == i || r3 == r1 || r3 == r2);

      const std::size_t forced = gen_rng.uniform_index(dim);
      auto& trial = trials[i];
      for (std::size_t d = 0; d < dim; ++d) {
        const bool cross = gen_rng.uniform() < config.crossover || d == forced;
        double v = cross ? pop[r1][d] + config.weight_f * (pop[r2][d] - pop[r3][d])
                         : pop[i][d];
        trial[d] = std::clamp(v, config.lower[d], config.upper[d]);
      }
    }

    parallel_for(np, config.threads, [&](std::size_t i) {
      trial_costs[i] = sanitize(cost(trials[i]));
    });
    result.evaluations += np;

    for (std::size_t i = 0; i < np; ++i) {
      if (trial_costs[i] <= costs[i]) {
        pop[i].swap(trials[i]);
        costs[i] = trial_costs[i];
      }
    }
    record_best(gen);
  }
  return result;
}

}  // namespace dpbench
