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

#include "dpbench/sysid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "dpbench/dynamics.hpp"
#include "dpbench/kernels.hpp"
#include "dpbench/rng.hpp"

namespace dpbench {
namespace {

using ParamField = double ModelParams::*;

const std::map<std::string, ParamField>& param_fields() {
  static const std::map<std::string, ParamField> fields{
      {"m1", &ModelParams::m1},   {"m2", &ModelParams::m2},
      {"l1", &ModelParams::l1},   {"l2", &ModelParams::l2},
      {"r1", &ModelParams::r1},   {"r2", &ModelParams::r2},
      {"I1", &ModelParams::I1},   {"I2", &ModelParams::I2},
      {"b1", &ModelParams::b1},   {"b2", &ModelParams::b2},
      {"cf1", &ModelParams::cf1}, {"cf2", &ModelParams::cf2},
      {"g", &ModelParams::g},
      {"tau_limit1", &ModelParams::tau_limit1},
      {"tau_limit2", &ModelParams::tau_limit2}};
  return fields;
}

ParamField lookup(const std::string& name) {
  const auto it = param_fields().find(name);
  if (it == param_fields().end())
    throw std::invalid_argument("unknown model parameter: " + name);
  return it->second;
}

}  // namespace

std::vector<std::string> model_param_names() {
  std::vector<std::string> names;
  names.reserve(param_fields().size());
  for (const auto& [name, field] : param_fields()) names.push_back(name);
  return names;
}

double get_model_param(const ModelParams& p, const std::string& name) {
  return p.*lookup(name);
}

void set_model_param(ModelParams& p, const std::string& name, double value) {
  p.*lookup(name) = value;
}

void SysIdDataset::validate() const {
  if (recordings.empty())
    throw std::invalid_argument("SysIdDataset: no recordings");
  if (!(trim_horizon > 0.0))
    throw std::invalid_argument("SysIdDataset: trim_horizon must be > 0");
  for (const auto& traj : recordings) {
    if (traj.size() < 2)
      throw std::invalid_argument("SysIdDataset: recording shorter than 2 samples");
    if (!(traj.dt > 0.0))
      throw std::invalid_argument("SysIdDataset: recording without dt");
  }
}

double weighted_state_error(const Trajectory& sim, const Trajectory& real,
                            std::size_t samples) {
  if (samples < 2)
    throw std::invalid_argument(
        "weighted_state_error: need at least 2 samples (weight undefined)");
  if (sim.size() < samples || real.size() < samples)
    throw std::invalid_argument("weighted_state_error: series too short");

  // Per-sample weights 1 -> 0.5, shared across the four state components.
  thread_local std::vector<double> weights;
  weights.resize(samples);
  const double span = static_cast<double>(samples - 1);
  for (std::size_t t = 0; t < samples; ++t)
    weights[t] = 1.0 - 0.5 * static_cast<double>(t) / span;

  double cost = 0.0;
  const std::vector<double>* sim_cols[4] = {&sim.q1, &sim.q2, &sim.qd1, &sim.qd2};
  const std::vector<double>* real_cols[4] = {&real.q1, &real.q2, &real.qd1,
                                             &real.qd2};
  for (int j = 0; j < 4; ++j)
    cost += kernels::weighted_sq_err(weights.data(), sim_cols[j]->data(),
                                     real_cols[j]->data(), samples);
  return cost;
}

double sysid_cost(const ModelParams& candidate, const SysIdDataset& data) {
  data.validate();
  candidate.validate();

  double total = 0.0;
  for (const auto& recording : data.recordings) {
    const std::size_t trimmed = std::min(
        recording.size(),
        static_cast<std::size_t>(std::llround(data.trim_horizon / recording.dt)) + 1);
    if (trimmed < 2)
      throw std::invalid_argument("sysid_cost: trimmed series shorter than 2");

    Trajectory sim;
    sim.dt = recording.dt;
    sim.reserve(trimmed);
    State x = recording.state_at(0);
    for (std::size_t t = 0; t < trimmed; ++t) {
      sim.push_row(recording.time[t], x, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
      if (t + 1 < trimmed) {
        const TorquePair tau{recording.tau1[t], recording.tau2[t]};
        // Implausible candidates can blow up mid-step; score them as
        // unusable rather than aborting the search.
        try {
          x = rk4_step(candidate, x, tau, recording.dt);
        } catch (const std::domain_error&) {
          return std::numeric_limits<double>::infinity();
        }
        if (!x.finite() || std::fabs(x.qd1) > 1e9 || std::fabs(x.qd2) > 1e9)
          return std::numeric_limits<double>::infinity();
      }
    }
    total += weighted_state_error(sim, recording, trimmed);
  }
  return total;
}

SysIdResult sysid_fit(const ModelParams& nominal, const SysIdDataset& data,
                      const SysIdOptions& options) {
  data.validate();
  if (options.free_params.empty())
    throw std::invalid_argument("sysid_fit: no free parameters");

  DeConfig de = options.de;
  de.lower.clear();
  de.upper.clear();
  for (const auto& name : options.free_params) {
    const double v = get_model_param(nominal, name);
    if (!(v != 0.0))
      throw std::invalid_argument("sysid_fit: nominal " + name +
                                  " is zero, cannot scale bounds");
    de.lower.push_back(v * (1.0 - options.bound_scale));
    de.upper.push_back(v * (1.0 + options.bound_scale));
  }

  auto assemble = [&](std::span<const double> x) {
    ModelParams p = nominal;
    for (std::size_t d = 0; d < options.free_params.size(); ++d)
      set_model_param(p, options.free_params[d], x[d]);
    if (options.point_mass_links) {
      p.r1 = p.l1;
      p.r2 = p.l2;
      p.I1 = p.m1 * p.l1 * p.l1;
      p.I2 = p.m2 * p.l2 * p.l2;
    }
    return p;
  };

  const CostFn cost = [&](std::span<const double> x) -> double {
    const ModelParams p = assemble(x);
    try {
      p.validate();
    } catch (const std::invalid_argument&) {
      return std::numeric_limits<double>::infinity();
    }
    return sysid_cost(p, data);
  };

  const DeResult de_result = differential_evolution(cost, de);

  SysIdResult result;
  result.params = assemble(de_result.best);
  result.cost = de_result.best_cost;
  result.history = de_result.history;
  return result;
}

std::vector<SysIdResult> sysid_multi(const ModelParams& nominal,
                                     const SysIdDataset& data,
                                     const SysIdOptions& options,
                                     std::size_t k) {
  if (k < 1) throw std::invalid_argument("sysid_multi: k must be >= 1");
  std::vector<SysIdResult> results;
  results.reserve(k);
  for (std::size_t run = 0; run < k; ++run) {
    SysIdOptions per_run = options;
    per_run.de.seed = derive_seed(options.de.seed, "sysid-run", run);
    results.push_back(sysid_fit(nominal, data, per_run));
  }
  std::sort(results.begin(), results.end(),
            [](const SysIdResult& a, const SysIdResult& b) {
              return a.cost < b.cost;
            });
  return results;
}

}  // namespace dpbench
