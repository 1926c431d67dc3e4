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

#include <array>

#include "dpbench/controller.hpp"
#include "dpbench/model.hpp"

namespace dpbench {

struct EnergyLqrConfig {
  // LQR design (discrete, solved by Riccati iteration at construction).
  std::array<double, 4> state_cost{60.0, 60.0, 2.0, 2.0};
  double input_cost = 1.0;
  double lqr_dt = 0.002;

  // Pendubot swing: energy pumping on the shoulder plus PD regulation of
  // link 1 toward upright, so the passive link approaches the upright orbit
  // instead of spinning on the energy shell.
  double k_energy = 1.2;   ///< energy pumping gain [1/(J s/rad)]
  double k_pos = 8.0;      ///< link-1 upright PD, proportional [N m/rad]
  double k_damp = 0.8;     ///< link-1 upright PD, derivative [N m s/rad]

  // Acrobot swing: elbow servo tracking an arm-resonance reference
  // -swing_amplitude * atan(qd1).
  double swing_amplitude = 1.4;  ///< [rad]
  double servo_p = 40.0;
  double servo_d = 1.0;

  double kick_torque = 2.0;  ///< startup nudge out of the rest equilibrium
  double rest_velocity = 0.05;

  // Catch basin on the quadratic form x^T P x with hysteresis.
  double switch_cost = 2.5;
  double exit_cost = 10.0;
};

/// Swing-up baseline: energy shaping toward the upright energy level with an
/// LQR catch about (pi, 0, 0, 0). Primary support is the pendubot; the
/// acrobot uses the same structure collocated on joint 2, best effort.
///
/// Construction solves the discrete-time algebraic Riccati equation for the
/// linearization about the upright equilibrium and throws std::runtime_error
/// when the iteration fails to converge.
class EnergyLqrController final : public Controller {
 public:
  EnergyLqrController(RobotKind kind, const ModelParams& p,
                      const EnergyLqrConfig& config = {});

  void reset() override;
  std::string_view name() const override { return "energy-lqr"; }

  /// Frobenius norm of the fixed-point defect of the Riccati solution.
  double riccati_residual() const { return residual_; }
  const std::array<double, 4>& gain() const { return gain_; }
  bool balancing() const { return balancing_; }

  /// Quadratic form delta^T P delta about the upright equilibrium (the
  /// catch-basin measure, in the internally rescaled cost units).
  double balance_cost(const State& s) const;

 protected:
  TorquePair compute_control(const State& measured, double t) override;

 private:
  double lyapunov_cost(const std::array<double, 4>& delta) const;

  RobotKind kind_;
  ModelParams params_;
  EnergyLqrConfig config_;
  double upright_energy_;
  std::array<double, 16> riccati_{};  // row-major 4x4 P
  std::array<double, 4> gain_{};      // LQR row K
  double residual_ = 0.0;
  bool balancing_ = false;
};

}  // namespace dpbench
