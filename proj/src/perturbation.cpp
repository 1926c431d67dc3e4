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

#include "dpbench/perturbation.hpp"

#include <cmath>
#include <stdexcept>

#include "dpbench/rng.hpp"

namespace dpbench {

TorquePair PerturbationProfile::torque_at(double t) const {
  TorquePair tau{0.0, 0.0};
  for (const auto& bump : bumps) {
    const double dtc = t - bump.t0;
    tau[bump.joint] +=
        bump.amplitude * std::exp(-dtc * dtc / (2.0 * bump.sigma_t * bump.sigma_t));
  }
  return tau;
}

bool PerturbationProfile::is_zero() const {
  for (const auto& bump : bumps)
    if (bump.amplitude != 0.0) return false;
  return true;
}

void PerturbationConfig::validate() const {
  if (bump_count < 0)
    throw std::invalid_argument("PerturbationConfig: bump_count < 0");
  if (!(amp_min >= 0.0 && amp_max >= amp_min))
    throw std::invalid_argument("PerturbationConfig: bad amplitude range");
  if (!(width_min > 0.0 && width_max >= width_min))
    throw std::invalid_argument("PerturbationConfig: bad width range");
}

PerturbationProfile generate_perturbation_profile(std::uint64_t seed,
                                                  double trial_length,
                                                  const PerturbationConfig& config) {
  config.validate();
  Rng rng(derive_seed(seed, "perturbation-profile"));

  PerturbationProfile profile;
  profile.seed = seed;
  profile.bumps.reserve(static_cast<std::size_t>(config.bump_count));
  for (int i = 0; i < config.bump_count; ++i) {
    PerturbationBump bump;
    bump.t0 = rng.uniform(0.0, trial_length);
    const double magnitude = rng.uniform(config.amp_min, config.amp_max);
    bump.amplitude = rng.uniform() < 0.5 ? magnitude : -magnitude;
    bump.sigma_t = rng.uniform(config.width_min, config.width_max);
    bump.joint = static_cast<int>(rng.uniform_index(2));
    profile.bumps.push_back(bump);
  }
  return profile;
}

}  // namespace dpbench
