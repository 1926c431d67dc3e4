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

#include "dpbench/rollout.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpbench/dynamics.hpp"
#include "dpbench/rng.hpp"

namespace dpbench {
namespace {

// Velocity magnitude beyond which the simulation is declared diverged.
constexpr double kVelocityBlowup = 1.0e6;

bool plausible(const State& s) {
  return s.finite() && std::fabs(s.qd1) < kVelocityBlowup &&
         std::fabs(s.qd2) < kVelocityBlowup;
}

}  // namespace

void ImperfectionConfig::validate() const {
  if (vel_noise_sigma < 0.0 || torque_noise_sigma < 0.0 || delay < 0.0)
    throw std::invalid_argument("ImperfectionConfig: sigmas/delay must be >= 0");
  if (!(k_resp > 0.0 && k_resp <= 1.0))
    throw std::invalid_argument("ImperfectionConfig: k_resp must be in (0, 1]");
}

Trajectory rollout(Controller& controller, RobotKind kind,
                   const ModelParams& p, const ImperfectionConfig& imp,
                   double t_final, double dt, const State& x0) {
  if (!(dt > 0.0) || !(t_final > 0.0))
    throw std::invalid_argument("rollout: dt and t_final must be > 0");
  imp.validate();
  p.validate();

  const auto n_steps = static_cast<std::size_t>(std::llround(t_final / dt));
  if (n_steps == 0)
    throw std::invalid_argument("rollout: t_final shorter than half a step");
  const auto delay_steps =
      static_cast<std::size_t>(std::llround(imp.delay / dt));

  Rng vel_noise(derive_seed(imp.rng_seed, "vel-noise"));
  Rng torque_noise(derive_seed(imp.rng_seed, "torque-noise"));

  controller.reset();

  Trajectory traj;
  traj.dt = dt;
  traj.reserve(n_steps + 1);

  std::vector<State> history;
  history.reserve(n_steps + 1);

  State x = x0;
  TorquePair motor_prev{0.0, 0.0};  // responsiveness filter state

  for (std::size_t i = 0; i < n_steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    history.push_back(x);

    // Measurement: delayed state (zero-order hold of the oldest sample
    // before the start), Gaussian noise on velocities only.
    const std::size_t meas_idx = i >= delay_steps ? i - delay_steps : 0;
    State measured = history[meas_idx];
    if (imp.vel_noise_sigma > 0.0) {
      measured.qd1 += imp.vel_noise_sigma * vel_noise.normal();
      measured.qd2 += imp.vel_noise_sigma * vel_noise.normal();
    }

    const TorquePair commanded = controller.get_control(measured, t);
    const TorquePair desired = apply_actuation(kind, commanded, p, x);

    const TorquePair motor = responsive_torque(motor_prev, desired, imp.k_resp);
    motor_prev = motor;

    TorquePair noisy = motor;
    if (imp.torque_noise_sigma > 0.0) {
      noisy[0] += imp.torque_noise_sigma * torque_noise.normal();
      noisy[1] += imp.torque_noise_sigma * torque_noise.normal();
    }

    TorquePair pert{0.0, 0.0};
    if (imp.perturbation) {
      pert = imp.perturbation->torque_at(t);
      noisy[0] += pert[0];
      noisy[1] += pert[1];
    }

    const TorquePair applied{
        std::clamp(noisy[0], -p.tau_limit1, p.tau_limit1),
        std::clamp(noisy[1], -p.tau_limit2, p.tau_limit2)};

    traj.push_row(t, x, applied, desired, pert);

    State next;
    try {
      next = rk4_step(p, x, applied, dt);
    } catch (const std::domain_error&) {
      next = State{0, 0, kVelocityBlowup, kVelocityBlowup};  // stage blew up
    }
    if (!plausible(next)) {
      traj.diverged = true;
      // Duplicate the last applied torque so every column keeps one length.
      traj.push_row(t + dt, x, applied, desired, pert);
      return traj;
    }
    x = next;
  }

  // Final sample; torque columns hold a zero-order copy of the last command.
  const std::size_t last = traj.size() - 1;
  traj.push_row(static_cast<double>(n_steps) * dt, x,
                {traj.tau1[last], traj.tau2[last]},
                {traj.tau_des1[last], traj.tau_des2[last]},
                {traj.tau_pert1[last], traj.tau_pert2[last]});
  return traj;
}

}  // namespace dpbench
