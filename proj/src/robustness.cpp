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

#include "dpbench/robustness.hpp"

#include <cmath>
#include <stdexcept>

#include "dpbench/parallel.hpp"
#include "dpbench/rng.hpp"
#include "dpbench/rollout.hpp"
#include "dpbench/sysid.hpp"

namespace dpbench {
namespace {

double grid_value(double from, double to, int index, int steps) {
  if (steps <= 1) return from;
  return from + (to - from) * static_cast<double>(index) /
                    static_cast<double>(steps - 1);
}

bool run_trial(const ControllerFactory& factory, RobotKind kind,
               const ModelParams& plant, const ImperfectionConfig& imp,
               const RobustnessOptions& options) {
  auto controller = factory();
  const Trajectory traj = rollout(*controller, kind, plant, imp,
                                  options.t_final, options.dt, options.x0);
  return check_success(traj, plant, options.threshold);
}

void append_log(std::vector<SweepPoint>* log, const std::string& criterion,
                const std::vector<double>& severities,
                const std::vector<char>& successes) {
  if (!log) return;
  for (std::size_t i = 0; i < severities.size(); ++i)
    log->push_back({criterion, severities[i], successes[i] != 0});
}

double fraction(const std::vector<char>& successes) {
  std::size_t hits = 0;
  for (char s : successes) hits += s != 0;
  return static_cast<double>(hits) / static_cast<double>(successes.size());
}

}  // namespace

std::string_view to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::vel_noise: return "vel_noise";
    case SweepKind::torque_noise: return "torque_noise";
    case SweepKind::response: return "response";
    case SweepKind::delay: return "delay";
  }
  return "unknown";
}

void SweepRanges::validate() const {
  if (steps < 1) throw std::invalid_argument("SweepRanges: steps must be >= 1");
  if (vel_noise_max < 0.0 || torque_noise_max < 0.0 || delay_max < 0.0)
    throw std::invalid_argument("SweepRanges: negative severity range");
  if (!(k_resp_floor > 0.0 && k_resp_floor <= 1.0))
    throw std::invalid_argument("SweepRanges: k_resp_floor must be in (0, 1]");
  if (!(model_scale_min > 0.0 && model_scale_min <= model_scale_max))
    throw std::invalid_argument("SweepRanges: bad model scale range");
  if (perturbation_profiles < 1)
    throw std::invalid_argument("SweepRanges: need >= 1 perturbation profile");
  perturbation.validate();
}

const std::vector<std::string>& swept_model_parameters() {
  static const std::vector<std::string> names{
      "m1", "m2", "l1", "l2", "r1", "r2", "I1", "I2", "b1", "b2"};
  return names;
}

double sweep_model_inaccuracies(const ControllerFactory& factory,
                                RobotKind kind, const ModelParams& nominal,
                                const RobustnessOptions& options,
                                std::vector<SweepPoint>* log) {
  options.ranges.validate();
  const auto& params = swept_model_parameters();
  const int steps = options.ranges.steps;
  const std::size_t total = params.size() * static_cast<std::size_t>(steps);

  std::vector<char> successes(total, 0);
  std::vector<double> severities(total, 0.0);
  parallel_for(total, options.threads, [&](std::size_t i) {
    const std::size_t param_idx = i / static_cast<std::size_t>(steps);
    const int grid_idx = static_cast<int>(i % static_cast<std::size_t>(steps));
    const double scale = grid_value(options.ranges.model_scale_min,
                                    options.ranges.model_scale_max, grid_idx,
                                    steps);
    severities[i] = scale;

    ModelParams plant = nominal;
    set_model_param(plant, params[param_idx],
                    scale * get_model_param(nominal, params[param_idx]));
    // Nominal pipeline otherwise: only the simulated plant changes.
    successes[i] =
        run_trial(factory, kind, plant, ImperfectionConfig{}, options) ? 1 : 0;
  });

  if (log) {
    for (std::size_t i = 0; i < total; ++i) {
      const std::size_t param_idx = i / static_cast<std::size_t>(steps);
      log->push_back(
          {"model:" + params[param_idx], severities[i], successes[i] != 0});
    }
  }
  return fraction(successes);
}

double sweep_scalar(const ControllerFactory& factory, RobotKind kind,
                    const ModelParams& nominal, SweepKind kind_of_sweep,
                    const RobustnessOptions& options,
                    std::vector<SweepPoint>* log) {
  options.ranges.validate();
  const int steps = options.ranges.steps;

  std::vector<char> successes(static_cast<std::size_t>(steps), 0);
  std::vector<double> severities(static_cast<std::size_t>(steps), 0.0);
  parallel_for(static_cast<std::size_t>(steps), options.threads,
               [&](std::size_t i) {
    const int idx = static_cast<int>(i);
    ImperfectionConfig imp;
    imp.rng_seed = derive_seed(options.seed, to_string(kind_of_sweep), i);
    double severity = 0.0;
    switch (kind_of_sweep) {
      case SweepKind::vel_noise:
        severity = grid_value(0.0, options.ranges.vel_noise_max, idx, steps);
        imp.vel_noise_sigma = severity;
        break;
      case SweepKind::torque_noise:
        severity = grid_value(0.0, options.ranges.torque_noise_max, idx, steps);
        imp.torque_noise_sigma = severity;
        break;
      case SweepKind::response:
        severity = grid_value(1.0, options.ranges.k_resp_floor, idx, steps);
        imp.k_resp = severity;
        break;
      case SweepKind::delay:
        severity = grid_value(0.0, options.ranges.delay_max, idx, steps);
        imp.delay = severity;
        break;
    }
    severities[i] = severity;
    successes[i] = run_trial(factory, kind, nominal, imp, options) ? 1 : 0;
  });

  append_log(log, std::string(to_string(kind_of_sweep)), severities, successes);
  return fraction(successes);
}

double eval_perturbations(const ControllerFactory& factory, RobotKind kind,
                          const ModelParams& nominal,
                          const RobustnessOptions& options,
                          std::vector<SweepPoint>* log) {
  options.ranges.validate();
  const auto profiles =
      static_cast<std::size_t>(options.ranges.perturbation_profiles);

  std::vector<char> successes(profiles, 0);
  std::vector<double> severities(profiles, 0.0);
  parallel_for(profiles, options.threads, [&](std::size_t i) {
    const std::uint64_t profile_seed = derive_seed(options.seed, "perturb", i);
    ImperfectionConfig imp;
    imp.perturbation = generate_perturbation_profile(
        profile_seed, options.t_final, options.ranges.perturbation);
    imp.rng_seed = profile_seed;
    severities[i] = static_cast<double>(i);
    successes[i] = run_trial(factory, kind, nominal, imp, options) ? 1 : 0;
  });

  append_log(log, "perturbation", severities, successes);
  return fraction(successes);
}

RobustnessReport robustness_score(double model_inaccuracy,
                                  double velocity_noise, double torque_noise,
                                  double torque_response, double time_delay,
                                  double perturbation) {
  const double parts[] = {model_inaccuracy, velocity_noise, torque_noise,
                          torque_response,  time_delay,     perturbation};
  for (double v : parts)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("robustness_score: fraction outside [0, 1]");

  RobustnessReport report{model_inaccuracy, velocity_noise, torque_noise,
                          torque_response,  time_delay,     perturbation,
                          0.0};
  report.final_score = (model_inaccuracy + velocity_noise + torque_noise +
                        torque_response + time_delay + perturbation) /
                       6.0;
  return report;
}

RobustnessReport evaluate_robustness(const ControllerFactory& factory,
                                     RobotKind kind, const ModelParams& nominal,
                                     const RobustnessOptions& options,
                                     std::vector<SweepPoint>* log) {
  const double model = sweep_model_inaccuracies(factory, kind, nominal, options, log);
  const double vel =
      sweep_scalar(factory, kind, nominal, SweepKind::vel_noise, options, log);
  const double torque =
      sweep_scalar(factory, kind, nominal, SweepKind::torque_noise, options, log);
  const double response =
      sweep_scalar(factory, kind, nominal, SweepKind::response, options, log);
  const double delay =
      sweep_scalar(factory, kind, nominal, SweepKind::delay, options, log);
  const double perturb = eval_perturbations(factory, kind, nominal, options, log);
  return robustness_score(model, vel, torque, response, delay, perturb);
}

}  // namespace dpbench
