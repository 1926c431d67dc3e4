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

#include "dpbench/mlp_policy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "dpbench/kernels.hpp"

namespace dpbench {
namespace {

constexpr char kMagic[4] = {'P', 'B', 'N', 'C'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "policy file IO assumes a little-endian host");

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("policy file: truncated");
  return v;
}

}  // namespace

std::size_t PolicyParams::expected_param_count(
    std::span<const std::uint32_t> sizes) {
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
    count += static_cast<std::size_t>(sizes[l]) * sizes[l + 1] + sizes[l + 1];
  return count;
}

void PolicyParams::validate() const {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("PolicyParams: need input and output layers");
  for (auto s : layer_sizes)
    if (s == 0) throw std::invalid_argument("PolicyParams: zero layer size");
  if (layer_sizes.back() != 2)
    throw std::invalid_argument("PolicyParams: output layer must have size 2");
  if (history_window != 0 && history_window != kHistoryFrames)
    throw std::invalid_argument("PolicyParams: history_window must be 0 or 12");
  if (layer_sizes.front() != policy_feature_dim(history_window))
    throw std::invalid_argument(
        "PolicyParams: input layer does not match the feature encoding");
  if (params.size() != expected_param_count(layer_sizes))
    throw std::invalid_argument("PolicyParams: parameter count mismatch");
}

PolicyParams PolicyParams::zeros(std::span<const std::uint32_t> hidden,
                                 std::uint32_t history_window) {
  PolicyParams p;
  p.history_window = history_window;
  p.layer_sizes.push_back(
      static_cast<std::uint32_t>(policy_feature_dim(history_window)));
  p.layer_sizes.insert(p.layer_sizes.end(), hidden.begin(), hidden.end());
  p.layer_sizes.push_back(2);
  p.params.assign(expected_param_count(p.layer_sizes), 0.0);
  return p;
}

std::size_t policy_feature_dim(std::uint32_t history_window) {
  return 6 + 2 * static_cast<std::size_t>(history_window);
}

void mlp_forward(const PolicyParams& policy, std::span<const double> features,
                 std::span<double, 2> out) {
  if (features.size() != policy.feature_dim())
    throw std::invalid_argument("mlp_forward: feature length mismatch");

  thread_local std::vector<double> buf_a, buf_b;
  buf_a.assign(features.begin(), features.end());

  const double* weights = policy.params.data();
  for (std::size_t l = 0; l + 1 < policy.layer_sizes.size(); ++l) {
    const std::size_t in_dim = policy.layer_sizes[l];
    const std::size_t out_dim = policy.layer_sizes[l + 1];
    const double* w = weights;
    const double* bias = weights + in_dim * out_dim;
    weights = bias + out_dim;

    buf_b.resize(out_dim);
    kernels::matvec(w, buf_a.data(), bias, buf_b.data(), out_dim, in_dim);
    for (double& v : buf_b) v = std::tanh(v);
    buf_a.swap(buf_b);
  }
  out[0] = buf_a[0];
  out[1] = buf_a[1];
}

TorquePair mlp_policy_forward(const PolicyParams& policy,
                              std::span<const double> features,
                              double tau_limit1, double tau_limit2) {
  std::array<double, 2> raw{};
  mlp_forward(policy, features, raw);
  return {tau_limit1 * raw[0], tau_limit2 * raw[1]};
}

std::vector<double> build_policy_features(const State& measured,
                                          std::span<const double> history,
                                          std::uint32_t history_window) {
  if (history.size() != 2 * static_cast<std::size_t>(history_window))
    throw std::invalid_argument("build_policy_features: history size mismatch");
  std::vector<double> features;
  features.reserve(policy_feature_dim(history_window));
  features.push_back(std::cos(measured.q1));
  features.push_back(std::sin(measured.q1));
  features.push_back(std::cos(measured.q2));
  features.push_back(std::sin(measured.q2));
  features.push_back(measured.qd1 / kVelocityNorm);
  features.push_back(measured.qd2 / kVelocityNorm);
  features.insert(features.end(), history.begin(), history.end());
  return features;
}

MlpPolicyController::MlpPolicyController(PolicyParams policy, RobotKind kind,
                                         const ModelParams& p)
    : policy_(std::move(policy)),
      kind_(kind),
      tau_limit1_(p.tau_limit1),
      tau_limit2_(p.tau_limit2) {
  policy_.validate();
  reset();
}

void MlpPolicyController::reset() {
  fault_ = false;
  primed_ = false;
  prev_action_ = {0.0, 0.0};
  history_.assign(2 * static_cast<std::size_t>(policy_.history_window), 0.0);
}

TorquePair MlpPolicyController::compute_control(const State& measured,
                                                double /*t*/) {
  const double v1 = measured.qd1 / kVelocityNorm;
  const double v2 = measured.qd2 / kVelocityNorm;

  if (policy_.history_window > 0) {
    if (!primed_) {
      // Pad the whole window with the first measurement.
      for (std::size_t f = 0; f < policy_.history_window; ++f) {
        history_[2 * f] = v1;
        history_[2 * f + 1] = v2;
      }
      primed_ = true;
    } else {
      // Shift one frame; newest goes last.
      std::copy(history_.begin() + 2, history_.end(), history_.begin());
      history_[history_.size() - 2] = v1;
      history_[history_.size() - 1] = v2;
    }
  }

  const auto features =
      build_policy_features(measured, history_, policy_.history_window);
  TorquePair u = mlp_policy_forward(policy_, features, tau_limit1_, tau_limit2_);
  u[passive_joint(kind_)] = 0.0;  // masked downstream anyway
  prev_action_ = u;
  return u;
}

void save_policy(const std::filesystem::path& path, const PolicyParams& policy) {
  policy.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());

  out.write(kMagic, sizeof(kMagic));
  write_raw(out, kFormatVersion);
  write_raw(out, policy.history_window);
  write_raw(out, static_cast<std::uint32_t>(policy.layer_sizes.size()));
  for (auto s : policy.layer_sizes) write_raw(out, s);
  out.write(reinterpret_cast<const char*>(policy.params.data()),
            static_cast<std::streamsize>(policy.params.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

PolicyParams load_policy(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());

  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("policy file: bad magic in " + path.string());
  const auto version = read_raw<std::uint32_t>(in);
  if (version != kFormatVersion)
    throw std::runtime_error("policy file: unsupported version");

  PolicyParams policy;
  policy.history_window = read_raw<std::uint32_t>(in);
  const auto n_layers = read_raw<std::uint32_t>(in);
  if (n_layers < 2 || n_layers > 64)
    throw std::runtime_error("policy file: implausible layer count");
  policy.layer_sizes.resize(n_layers);
  for (auto& s : policy.layer_sizes) s = read_raw<std::uint32_t>(in);

  policy.params.resize(PolicyParams::expected_param_count(policy.layer_sizes));
  in.read(reinterpret_cast<char*>(policy.params.data()),
          static_cast<std::streamsize>(policy.params.size() * sizeof(double)));
  if (!in) throw std::runtime_error("policy file: truncated parameters");
  policy.validate();
  return policy;
}

}  // namespace dpbench
