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

#include "dpbench/snes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dpbench/kernels.hpp"
#include "dpbench/parallel.hpp"
#include "dpbench/rng.hpp"

namespace dpbench {

SnesState SnesState::init(std::vector<double> mean0, const SnesConfig& config) {
  if (mean0.empty()) throw std::invalid_argument("snes: empty parameter vector");
  if (!(config.sigma_init > 0.0))
    throw std::invalid_argument("snes: sigma_init must be > 0");

  const double n = static_cast<double>(mean0.size());
  SnesState s;
  s.population = config.population != 0
                     ? config.population
                     : 4 + static_cast<std::size_t>(3.0 * std::log(n));
  if (s.population < 4) throw std::invalid_argument("snes: population < 4");
  s.lr_global = config.lr_global;
  s.lr_coord = config.lr_coord >= 0.0
                   ? config.lr_coord
                   : (3.0 + std::log(n)) / (10.0 * std::sqrt(n));
  s.sigma.assign(mean0.size(), config.sigma_init);
  s.mean = std::move(mean0);
  s.seed = config.seed;
  s.best_fitness = -std::numeric_limits<double>::infinity();
  return s;
}

std::vector<double> snes_utilities(std::size_t lambda) {
  std::vector<double> u(lambda);
  const double denom = std::log(static_cast<double>(lambda) / 2.0 + 1.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < lambda; ++k) {
    u[k] = std::max(0.0, denom - std::log(static_cast<double>(k + 1)));
    sum += u[k];
  }
  for (std::size_t k = 0; k < lambda; ++k)
    u[k] = u[k] / sum - 1.0 / static_cast<double>(lambda);
  // Force an exact zero sum so constant fitness shifts cancel exactly.
  const double drift =
      std::accumulate(u.begin(), u.end(), 0.0) / static_cast<double>(lambda);
  for (auto& v : u) v -= drift;
  return u;
}

ProgressRow snes_step_with_source(SnesState& state, const FitnessFn& fitness,
                                  const NormalSource& normals,
                                  unsigned threads) {
  const std::size_t n = state.mean.size();
  const std::size_t lambda = state.population;

  // Candidate k is theta + sigma o s_k with s_k standard normal, drawn
  // coordinate-major per candidate. The layout is part of the determinism
  // contract.
  std::vector<double> draws(lambda * n);
  std::vector<std::vector<double>> candidates(lambda);
  for (std::size_t k = 0; k < lambda; ++k) {
    auto& cand = candidates[k];
    cand.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = normals();
      draws[k * n + i] = s;
      cand[i] = state.mean[i] + state.sigma[i] * s;
    }
  }

  std::vector<double> scores(lambda);
  parallel_for(lambda, threads, [&](std::size_t k) {
    scores[k] = fitness(candidates[k]);
  });

  // Rank by fitness descending; non-finite values sink to the end; ties are
  // broken by candidate index so the ordering is total and reproducible.
  std::vector<std::size_t> order(lambda);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool fa = std::isfinite(scores[a]);
    const bool fb = std::isfinite(scores[b]);
    if (fa != fb) return fa;
    if (fa && scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  const std::vector<double> utilities = snes_utilities(lambda);

  // Utility-weighted natural-gradient estimates: grad_theta from the raw
  // perturbations, grad_sigma from (s^2 - 1); the step-size update is
  // log-normal, sigma o exp(tau_c * grad_sigma), so sigma stays positive.
  // The optional global factor (tau_g) acts on the mean of grad_sigma.
  std::vector<double> grad_mean(n, 0.0);
  std::vector<double> grad_sigma(n, 0.0);
  std::vector<double> s_sq(n);
  for (std::size_t rank = 0; rank < lambda; ++rank) {
    const std::size_t k = order[rank];
    const double u = utilities[rank];
    const double* s = draws.data() + k * n;
    kernels::axpy(u, s, grad_mean.data(), n);
    for (std::size_t i = 0; i < n; ++i) s_sq[i] = s[i] * s[i] - 1.0;
    kernels::axpy(u, s_sq.data(), grad_sigma.data(), n);
  }
  double grad_global = 0.0;
  if (state.lr_global != 0.0) {
    for (std::size_t i = 0; i < n; ++i) grad_global += grad_sigma[i];
    grad_global /= static_cast<double>(n);
  }
  kernels::mul_add(state.mean.data(), state.sigma.data(), grad_mean.data(), n);
  for (std::size_t i = 0; i < n; ++i)
    state.sigma[i] *= std::exp(state.lr_coord * grad_sigma[i] +
                               state.lr_global * grad_global);
  ++state.generation;

  double best = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < lambda; ++k) {
    const double v = std::isfinite(scores[k])
                         ? scores[k]
                         : -std::numeric_limits<double>::infinity();
    sum += v;
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  if (!state.has_best || best > state.best_fitness) {
    state.best_fitness = best;
    state.best_params = candidates[best_k];
    state.has_best = true;
  }
  return {state.generation, best, sum / static_cast<double>(lambda)};
}

ProgressRow snes_step(SnesState& state, const FitnessFn& fitness,
                      unsigned threads) {
  Rng rng(derive_seed(state.seed, "snes-generation", state.generation));
  return snes_step_with_source(
      state, fitness, [&rng]() { return rng.normal(); }, threads);
}

}  // namespace dpbench
