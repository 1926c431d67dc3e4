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
#include <filesystem>
#include <span>
#include <vector>

#include "dpbench/controller.hpp"
#include "dpbench/model.hpp"

namespace dpbench {

/// Velocity normalization constant for policy features [rad/s].
inline constexpr double kVelocityNorm = 20.0;

/// Number of stacked velocity frames when history encoding is enabled
/// (eleven previous plus the current step).
inline constexpr std::uint32_t kHistoryFrames = 12;

/// Feed-forward tanh policy: architecture descriptor plus one flat
/// parameter vector laid out layer by layer, weights (row-major) then
/// biases. Hidden and output activations are tanh; the controller scales
/// the output by the torque limit.
struct PolicyParams {
  std::vector<std::uint32_t> layer_sizes;  ///< input, hidden..., output(=2)
  std::uint32_t history_window = 0;        ///< 0 or kHistoryFrames
  std::vector<double> params;              ///< flat weight/bias vector

  static std::size_t expected_param_count(std::span<const std::uint32_t> sizes);
  std::size_t feature_dim() const { return layer_sizes.front(); }

  /// Checks architecture sanity, the {0, 12} history contract and the exact
  /// parameter count. Throws std::invalid_argument.
  void validate() const;

  /// Convenience builder: input size derived from the history window,
  /// output fixed at 2, parameters zero-initialized.
  static PolicyParams zeros(std::span<const std::uint32_t> hidden,
                            std::uint32_t history_window);
};

/// Feature dimension for a history window: 6 base features
/// [cos q1, sin q1, cos q2, sin q2, qd1/20, qd2/20] plus 2 per history frame.
std::size_t policy_feature_dim(std::uint32_t history_window);

/// Raw network output in [-1, 1]^2 (pre-torque scaling).
void mlp_forward(const PolicyParams& policy, std::span<const double> features,
                 std::span<double, 2> out);

/// Network output scaled per joint by the torque limits. Throws on a
/// feature-length mismatch.
TorquePair mlp_policy_forward(const PolicyParams& policy,
                              std::span<const double> features,
                              double tau_limit1, double tau_limit2);

/// Builds the feature vector from a measurement and the velocity history
/// (oldest frame first, newest last). history must hold exactly
/// 2 * history_window normalized velocity entries.
std::vector<double> build_policy_features(const State& measured,
                                          std::span<const double> history,
                                          std::uint32_t history_window);

/// Controller wrapper holding the measurement history ring buffer and the
/// previous action. Before enough samples accumulate the history is padded
/// with the first measurement.
class MlpPolicyController final : public Controller {
 public:
  MlpPolicyController(PolicyParams policy, RobotKind kind,
                      const ModelParams& p);

  void reset() override;
  std::string_view name() const override { return "mlp-policy"; }

  const PolicyParams& policy() const { return policy_; }

 protected:
  TorquePair compute_control(const State& measured, double t) override;

 private:
  PolicyParams policy_;
  RobotKind kind_;
  double tau_limit1_;
  double tau_limit2_;
  std::vector<double> history_;  ///< normalized velocities, oldest first
  std::vector<double> features_;
  bool primed_ = false;
  TorquePair prev_action_{0.0, 0.0};
};

/// Binary policy file: little-endian, magic "PBNC", version u32,
/// history_window u32, layer count u32, layer sizes u32 each, then the
/// parameters as f64.
void save_policy(const std::filesystem::path& path, const PolicyParams& policy);
PolicyParams load_policy(const std::filesystem::path& path);

}  // namespace dpbench
