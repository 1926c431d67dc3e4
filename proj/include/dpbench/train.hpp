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
#include <vector>

#include "dpbench/mlp_policy.hpp"
#include "dpbench/model.hpp"
#include "dpbench/perturbation.hpp"
#include "dpbench/rewards.hpp"
#include "dpbench/scoring.hpp"
#include "dpbench/snes.hpp"
#include "dpbench/trajectory.hpp"

namespace dpbench {

/// What a training candidate is scored by.
enum class FitnessKind {
  score,           ///< competition performance score of the rollout
  reward_history,  ///< time-integrated upright-tracking reward
  reward_evolsac,  ///< time-integrated surrogate reward
};

FitnessKind fitness_kind_from_string(std::string_view name);

/// Where the SNES search mean starts.
enum class PolicyInit {
  pump,  ///< resonant energy-pump primer (success-capable incumbent)
  zero,  ///< all parameters zero
};

PolicyInit policy_init_from_string(std::string_view name);

struct TrainConfig {
  std::size_t generations = 200;
  std::size_t population = 16;
  std::vector<std::uint32_t> hidden{16};
  std::uint32_t history_window = 0;
  double sigma_init = 0.2;
  FitnessKind fitness = FitnessKind::score;
  PolicyInit init = PolicyInit::pump;

  /// Robust training: fitness is averaged over `particles` rollouts, each
  /// driven by a perturbation profile drawn from the disturbance
  /// distribution. With zero-amplitude disturbances this reduces exactly to
  /// the nominal pipeline.
  bool robust = false;
  std::size_t particles = 4;
  PerturbationConfig disturbance;

  double t_final = 10.0;
  double dt = 0.002;
  double threshold = kDefaultSuccessThreshold;
  WeightSet weights = WeightSet::simulation();
  EvolsacRewardConfig evolsac;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct TrainResult {
  PolicyParams policy;       ///< best-ever candidate
  double best_fitness = 0.0;
  std::vector<ProgressRow> history;
};

/// Simulates M independent particles of the closed loop, each with its own
/// disturbance profile drawn from the known profile distribution (the
/// analytic model stands in for the learned forward model). Particles share
/// the initial state and are deterministic in (seed, particle index).
std::vector<Trajectory> rollout_with_disturbances(
    const PolicyParams& policy, RobotKind kind, const ModelParams& p,
    std::size_t particle_count, const PerturbationConfig& disturbance,
    std::uint64_t seed, double t_final, double dt, const State& x0 = {},
    unsigned threads = 1);

/// Fitness of one candidate policy under the config (single nominal rollout,
/// or the mean over disturbance particles when robust).
double policy_fitness(const PolicyParams& policy, RobotKind kind,
                      const ModelParams& p, const TrainConfig& config,
                      std::uint64_t candidate_seed);

/// Deterministic swing primer: one hidden unit reads the arm velocity with a
/// small bias, feeding the active joint, so the initial behavior resonantly
/// pumps energy. Score-based search needs such a success-capable incumbent;
/// from an all-zero policy every candidate scores 0 and ranking is blind.
PolicyParams pump_primer_policy(RobotKind kind,
                                std::span<const std::uint32_t> hidden,
                                std::uint32_t history_window);

/// SNES neuroevolution of the policy parameters against the configured
/// fitness. Returns the best-ever candidate. Deterministic given the seed.
TrainResult snes_train_policy(RobotKind kind, const ModelParams& p,
                              const TrainConfig& config);

}  // namespace dpbench
