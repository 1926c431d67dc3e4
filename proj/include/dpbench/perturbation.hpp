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

#include "dpbench/model.hpp"

namespace dpbench {

/// One Gaussian torque bump A * exp(-(t-t0)^2 / (2 sigma_t^2)) on a joint.
struct PerturbationBump {
  double t0 = 0.0;         ///< bump center [s]
  double amplitude = 0.0;  ///< peak torque [N m], signed
  double sigma_t = 0.1;    ///< temporal width [s], > 0
  int joint = 0;           ///< 0 or 1
};

/// Seeded sequence of torque bumps applied on top of the motor torque.
struct PerturbationProfile {
  std::vector<PerturbationBump> bumps;
  std::uint64_t seed = 0;

  /// Summed bump torque on both joints at time t.
  TorquePair torque_at(double t) const;

  bool is_zero() const;
};

struct PerturbationConfig {
  int bump_count = 3;
  double amp_min = 0.0;    ///< magnitude range [N m]
  double amp_max = 5.0;
  double width_min = 0.05; ///< sigma_t range [s]
  double width_max = 0.2;

  void validate() const;
};

/// Deterministic in seed: bump centers uniform over the trial, magnitudes
/// uniform in [amp_min, amp_max] with a random sign, widths uniform in
/// [width_min, width_max], joints assigned uniformly.
PerturbationProfile generate_perturbation_profile(std::uint64_t seed,
                                                  double trial_length,
                                                  const PerturbationConfig& config);

}  // namespace dpbench
