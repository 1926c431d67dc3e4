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

#include "dpbench/train.hpp"

#include <cmath>
#include <stdexcept>

#include "dpbench/parallel.hpp"
#include "dpbench/rng.hpp"
#include "dpbench/rollout.hpp"

namespace dpbench {
namespace {

constexpr double kDivergedFitness = -1.0e9;

double trajectory_fitness(const Trajectory& traj, RobotKind kind,
                          const ModelParams& p, const TrainConfig& config) {
  if (traj.diverged && config.fitness != FitnessKind::score)
    return kDivergedFitness;

  switch (config.fitness) {
    case FitnessKind::score: {
      const Criteria c = compute_criteria(traj, p, config.threshold);
      return performance_score(c, config.weights);
    }
    case FitnessKind::reward_history: {
      const RewardPreset preset = kind == RobotKind::pendubot
                                      ? RewardPreset::pendubot
                                      : RewardPreset::acrobot;
      const int act = active_joint(kind);
      const double limit = p.tau_limit(act);
      const auto& tau_des = act == 0 ? traj.tau_des1 : traj.tau_des2;
      double sum = 0.0;
      double a_prev = 0.0;
      for (std::size_t t = 0; t < traj.steps(); ++t) {
        const double a = tau_des[t] / limit;
        sum += reward_history_sac(traj.state_at(t), a, a_prev, traj.dt, preset);
        a_prev = a;
      }
      return sum * traj.dt;
    }
    case FitnessKind::reward_evolsac: {
      const int act = active_joint(kind);
      const double limit = p.tau_limit(act);
      const auto& tau_des = act == 0 ? traj.tau_des1 : traj.tau_des2;
      double sum = 0.0;
      double a_prev = 0.0;
      for (std::size_t t = 0; t < traj.steps(); ++t) {
        const double a = tau_des[t] / limit;
        sum += reward_evolsac(p, traj.state_at(t), a, std::fabs(a - a_prev),
                              traj.time[t], config.evolsac);
        a_prev = a;
      }
      return sum * traj.dt;
    }
  }
  throw std::logic_error("trajectory_fitness: unknown fitness kind");
}

}  // namespace

FitnessKind fitness_kind_from_string(std::string_view name) {
  if (name == "score") return FitnessKind::score;
  if (name == "reward-history") return FitnessKind::reward_history;
  if (name == "reward-evolsac") return FitnessKind::reward_evolsac;
  throw std::invalid_argument("unknown fitness kind: " + std::string(name));
}

PolicyInit policy_init_from_string(std::string_view name) {
  if (name == "pump") return PolicyInit::pump;
  if (name == "zero") return PolicyInit::zero;
  throw std::invalid_argument("unknown policy init: " + std::string(name));
}

PolicyParams pump_primer_policy(RobotKind kind,
                                std::span<const std::uint32_t> hidden,
                                std::uint32_t history_window) {
  PolicyParams policy = PolicyParams::zeros(hidden, history_window);
  constexpr double kVelGain = 4.0;   // on the normalized qd1 feature
  constexpr double kOutGain = 0.6;
  constexpr double kRestBias = 0.05; // leaves the hanging rest point

  // Unit 0 of the first hidden layer reads qd1; unit 0 of every further
  // layer passes it along; the output row of the active joint picks it up.
  double* base = policy.params.data();
  const std::size_t in_dim = policy.layer_sizes[0];
  base[0 * in_dim + 4] = kVelGain;           // qd1 / kVelocityNorm feature
  base[in_dim * policy.layer_sizes[1]] = kRestBias;  // first bias entry

  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < policy.layer_sizes.size(); ++l) {
    const std::size_t rows = policy.layer_sizes[l + 1];
    const std::size_t cols = policy.layer_sizes[l];
    if (l + 2 == policy.layer_sizes.size()) {
      // Output layer: route unit 0 to the active joint.
      policy.params[offset + static_cast<std::size_t>(active_joint(kind)) * cols] =
          kOutGain;
    } else if (l > 0) {
      policy.params[offset] = 1.5;  // chain unit 0 through hidden layers
    }
    offset += rows * cols + rows;
  }
  return policy;
}

std::vector<Trajectory> rollout_with_disturbances(
    const PolicyParams& policy, RobotKind kind, const ModelParams& p,
    std::size_t particle_count, const PerturbationConfig& disturbance,
    std::uint64_t seed, double t_final, double dt, const State& x0,
    unsigned threads) {
  if (particle_count < 1)
    throw std::invalid_argument("rollout_with_disturbances: need >= 1 particle");

  std::vector<Trajectory> particles(particle_count);
  parallel_for(particle_count, threads, [&](std::size_t m) {
    const std::uint64_t particle_seed = derive_seed(seed, "particle", m);
    ImperfectionConfig imp;
    imp.perturbation =
        generate_perturbation_profile(particle_seed, t_final, disturbance);
    imp.rng_seed = particle_seed;
    MlpPolicyController controller(policy, kind, p);
    particles[m] = rollout(controller, kind, p, imp, t_final, dt, x0);
  });
  return particles;
}

double policy_fitness(const PolicyParams& policy, RobotKind kind,
                      const ModelParams& p, const TrainConfig& config,
                      std::uint64_t candidate_seed) {
  if (config.robust) {
    const auto particles = rollout_with_disturbances(
        policy, kind, p, config.particles, config.disturbance, candidate_seed,
        config.t_final, config.dt);
    double sum = 0.0;
    for (const auto& traj : particles)
      sum += trajectory_fitness(traj, kind, p, config);
    return sum / static_cast<double>(particles.size());
  }

  MlpPolicyController controller(policy, kind, p);
  const Trajectory traj = rollout(controller, kind, p, ImperfectionConfig{},
                                  config.t_final, config.dt);
  return trajectory_fitness(traj, kind, p, config);
}

TrainResult snes_train_policy(RobotKind kind, const ModelParams& p,
                              const TrainConfig& config) {
  PolicyParams shape =
      config.init == PolicyInit::pump
          ? pump_primer_policy(kind, config.hidden, config.history_window)
          : PolicyParams::zeros(config.hidden, config.history_window);
  shape.validate();

  SnesConfig snes_config;
  snes_config.population = config.population;
  snes_config.sigma_init = config.sigma_init;
  snes_config.seed = derive_seed(config.seed, "snes-train");

  SnesState state = SnesState::init(shape.params, snes_config);

  // The zero policy is the starting incumbent; training must beat it.
  auto candidate_fitness = [&](std::span<const double> theta,
                               std::uint64_t rollout_seed) {
    PolicyParams candidate = shape;
    candidate.params.assign(theta.begin(), theta.end());
    return policy_fitness(candidate, kind, p, config, rollout_seed);
  };
  state.best_params = shape.params;
  state.best_fitness = candidate_fitness(
      shape.params, derive_seed(config.seed, "rollout", 0));
  state.has_best = true;

  TrainResult result;
  result.history.reserve(config.generations + 1);
  result.history.push_back({0, state.best_fitness, state.best_fitness});

  for (std::size_t gen = 0; gen < config.generations; ++gen) {
    // Common random numbers within a generation: every candidate sees the
    // same disturbance draws, so ranking is not dominated by luck.
    const std::uint64_t rollout_seed =
        derive_seed(config.seed, "rollout", state.generation + 1);
    const FitnessFn fitness = [&](std::span<const double> theta) {
      return candidate_fitness(theta, rollout_seed);
    };
    result.history.push_back(snes_step(state, fitness, config.threads));
  }

  result.policy = shape;
  result.policy.params = state.best_params;
  result.best_fitness = state.best_fitness;
  return result;
}

}  // namespace dpbench
