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

#include <functional>
#include <memory>
#include <string_view>

#include "dpbench/model.hpp"

namespace dpbench {

/// Deterministic state machine mapping measured states to commanded torques.
///
/// Contract: reset() is called at trial start; get_control() must return
/// finite torques and may advance internal state (history, previous action).
/// A non-finite measurement yields zero torque and latches a fault flag.
class Controller {
 public:
  virtual ~Controller() = default;

  virtual void reset() = 0;
  virtual std::string_view name() const = 0;

  TorquePair get_control(const State& measured, double t) {
    if (!measured.finite()) {
      fault_ = true;
      return {0.0, 0.0};
    }
    return compute_control(measured, t);
  }

  bool faulted() const { return fault_; }

 protected:
  virtual TorquePair compute_control(const State& measured, double t) = 0;

  bool fault_ = false;
};

/// Fresh controller instance per trial; sweeps construct one per rollout so
/// concurrent evaluations never share state.
using ControllerFactory = std::function<std::unique_ptr<Controller>()>;

/// Commands zero torque everywhere. Handy as a failing reference.
class ZeroController final : public Controller {
 public:
  void reset() override { fault_ = false; }
  std::string_view name() const override { return "zero"; }

 protected:
  TorquePair compute_control(const State&, double) override { return {0.0, 0.0}; }
};

}  // namespace dpbench
