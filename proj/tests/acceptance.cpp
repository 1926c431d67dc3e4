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

// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits non-zero when any criterion fails. Tolerances are pinned in code.

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "dpbench/de.hpp"
#include "dpbench/dynamics.hpp"
#include "dpbench/energy_lqr.hpp"
#include "dpbench/kernels.hpp"
#include "dpbench/mlp_policy.hpp"
#include "dpbench/report_io.hpp"
#include "dpbench/rewards.hpp"
#include "dpbench/rng.hpp"
#include "dpbench/robustness.hpp"
#include "dpbench/rollout.hpp"
#include "dpbench/scoring.hpp"
#include "dpbench/snes.hpp"
#include "dpbench/sysid.hpp"
#include "dpbench/train.hpp"
#include "oracle_lagrangian.hpp"

using namespace dpbench;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int criterion, const char* label, bool ok, const std::string& detail,
            double seconds) {
  std::printf("[%s] criterion %2d: %-28s %s (%.2fs)\n", ok ? "PASS" : "FAIL",
              criterion, label, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

template <typename Fn>
void timed(int criterion, const char* label, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(criterion, label, ok, detail, seconds);
}

Criteria zero_criteria(bool success) { return {success, 0, 0, 0, 0, 0}; }

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(DPBENCH_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : (WIFEXITED(status) ? WEXITSTATUS(status) : -1);
}

// --- criterion implementations -------------------------------------------

bool criterion_score_formula(std::string& detail) {
  const WeightSet sim = WeightSet::simulation();

  const double all_zero = performance_score(zero_criteria(true), sim);
  const double failed = performance_score({false, 1, 2, 3, 0.4, 5}, sim);

  Criteria slow = zero_criteria(true);
  slow.swingup_time = 10.0;
  const double ten_second = performance_score(slow, sim);
  // 1 - tanh(pi/2)/5, evaluated independently and frozen.
  const double expected = 0.8165695328665451;

  const bool ok = all_zero == 1.0 && failed == 0.0 &&
                  std::fabs(ten_second - expected) < 1e-9 &&
                  std::fabs(ten_second - (1.0 - std::tanh(kPi / 2.0) / 5.0)) <
                      1e-15;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "S(c_t=10)=%.12f vs %.12f", ten_second,
                expected);
  detail = buf;
  return ok;
}

bool criterion_weight_presets(std::string& detail) {
  const WeightSet sim = WeightSet::simulation();
  const WeightSet hw = WeightSet::hardware();
  const bool ok = sim.time == kPi / 20 && sim.energy == kPi / 60 &&
                  sim.torque_cost == kPi / 20 &&
                  sim.torque_smoothness == 10 * kPi &&
                  sim.velocity == kPi / 400 && hw.time == kPi / 20 &&
                  hw.energy == kPi / 60 && hw.torque_cost == kPi / 100 &&
                  hw.torque_smoothness == kPi / 4 && hw.velocity == kPi / 400;
  detail = "both presets exact";
  return ok;
}

bool criterion_dynamics_oracle(std::string& detail) {
  const ModelParams p;
  Rng rng(90210);
  double max_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const State s{rng.uniform(-2 * kPi, 2 * kPi), rng.uniform(-2 * kPi, 2 * kPi),
                  rng.uniform(-10, 10), rng.uniform(-10, 10)};
    const TorquePair tau{rng.uniform(-6, 6), rng.uniform(-6, 6)};
    const JointAccel a = forward_dynamics(p, s, tau);
    const JointAccel b = oracle::forward_dynamics(p, s, tau);
    max_err = std::max({max_err, std::fabs(a.qdd1 - b.qdd1),
                        std::fabs(a.qdd2 - b.qdd2)});
  }

  ModelParams frictionless = p;
  frictionless.b1 = frictionless.b2 = 0.0;
  frictionless.cf1 = frictionless.cf2 = 0.0;
  State x{2.0, 0.5, 0.0, 0.0};
  const double e0 = total_energy(frictionless, x);
  double drift = 0.0;
  for (int i = 0; i < 10000; ++i) {
    x = rk4_step(frictionless, x, {0, 0}, 1e-3);
    drift = std::max(drift, std::fabs(total_energy(frictionless, x) - e0));
  }
  const double rel_drift = drift / std::fabs(e0);

  char buf[128];
  std::snprintf(buf, sizeof(buf), "max|qdd err|=%.2e, energy drift=%.2e",
                max_err, rel_drift);
  detail = buf;
  return max_err < 1e-10 && rel_drift < 1e-3;
}

bool criterion_robustness_counts(std::string& detail) {
  const ModelParams p;
  RobustnessOptions options;  // full protocol defaults: N=21, 50 profiles
  options.seed = 19;

  std::atomic<int> rollouts{0};
  const ControllerFactory factory = [&rollouts, &p] {
    ++rollouts;
    return std::make_unique<EnergyLqrController>(RobotKind::pendubot, p);
  };

  rollouts = 0;
  const double model =
      sweep_model_inaccuracies(factory, RobotKind::pendubot, p, options);
  const int model_rollouts = rollouts.exchange(0);

  int scalar_rollouts[4] = {0, 0, 0, 0};
  double fractions[4] = {0, 0, 0, 0};
  const SweepKind kinds[4] = {SweepKind::vel_noise, SweepKind::torque_noise,
                              SweepKind::response, SweepKind::delay};
  for (int i = 0; i < 4; ++i) {
    fractions[i] =
        sweep_scalar(factory, RobotKind::pendubot, p, kinds[i], options);
    scalar_rollouts[i] = rollouts.exchange(0);
  }

  const double perturb =
      eval_perturbations(factory, RobotKind::pendubot, p, options);
  const int perturb_rollouts = rollouts.exchange(0);

  const RobustnessReport report = robustness_score(
      model, fractions[0], fractions[1], fractions[2], fractions[3], perturb);
  const double mean = (model + fractions[0] + fractions[1] + fractions[2] +
                       fractions[3] + perturb) /
                      6.0;

  const bool counts_ok = model_rollouts == 210 && scalar_rollouts[0] == 21 &&
                         scalar_rollouts[1] == 21 && scalar_rollouts[2] == 21 &&
                         scalar_rollouts[3] == 21 && perturb_rollouts == 50;
  const bool mean_ok = std::fabs(report.final_score - mean) < 1e-12;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "rollouts=%d+4x21+%d, final=%.4f (baseline controller)",
                model_rollouts, perturb_rollouts, report.final_score);
  detail = buf;
  return counts_ok && mean_ok;
}

bool criterion_identity_pipeline(std::string& detail) {
  const ModelParams p;
  ImperfectionConfig identity;
  identity.k_resp = 1.0;  // explicit: the identity settings
  identity.vel_noise_sigma = 0.0;
  identity.torque_noise_sigma = 0.0;
  identity.delay = 0.0;
  identity.rng_seed = 77;

  EnergyLqrController controller(RobotKind::pendubot, p);
  const Trajectory wrapped =
      rollout(controller, RobotKind::pendubot, p, identity, 10.0, 0.002);

  // Plain simulation loop, no imperfection machinery.
  EnergyLqrController ref(RobotKind::pendubot, p);
  ref.reset();
  State x{};
  bool ok = wrapped.steps() == 5000;
  for (std::size_t i = 0; ok && i < wrapped.steps(); ++i) {
    const double t = static_cast<double>(i) * 0.002;
    const TorquePair applied =
        apply_actuation(RobotKind::pendubot, ref.get_control(x, t), p, x);
    ok = wrapped.q1[i] == x.q1 && wrapped.q2[i] == x.q2 &&
         wrapped.qd1[i] == x.qd1 && wrapped.qd2[i] == x.qd2 &&
         wrapped.tau1[i] == applied[0] && wrapped.tau2[i] == applied[1];
    x = rk4_step(p, x, applied, 0.002);
  }
  ok = ok && wrapped.final_state().q1 == x.q1 &&
       wrapped.final_state().qd1 == x.qd1;
  detail = ok ? "bitwise equal to the plain loop" : "mismatch found";
  return ok;
}

bool criterion_reward_fixpoint(std::string& detail) {
  const double at_top =
      reward_history_sac({kPi, 0, 0, 0}, 0.0, 0.0, 0.002, RewardPreset::pendubot);
  if (at_top != 0.0) {
    detail = "upright reward not exactly zero";
    return false;
  }
  Rng rng(314159);
  double worst = -1e300;
  for (int i = 0; i < 1000000; ++i) {
    const State s{rng.uniform(-3 * kPi, 3 * kPi), rng.uniform(-3 * kPi, 3 * kPi),
                  rng.uniform(-25, 25), rng.uniform(-25, 25)};
    const double a = rng.uniform(-1, 1);
    const double a_prev = rng.uniform(-1, 1);
    const RewardPreset preset =
        (i & 1) ? RewardPreset::pendubot : RewardPreset::acrobot;
    worst = std::max(worst, reward_history_sac(s, a, a_prev, 0.002, preset));
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "R(top)=0 exactly, max over 1e6 samples=%.3e",
                worst);
  detail = buf;
  return worst < 0.0;
}

bool criterion_sysid_oracle(std::string& detail) {
  // Hand case first: T_i = 2 with unit error at both samples -> J = 1.5 and
  // the weights at the endpoints are exactly 1 and 0.5.
  {
    Trajectory sim, real;
    sim.dt = real.dt = 0.002;
    for (int i = 0; i < 2; ++i) {
      sim.push_row(0.002 * i, {0, 1.0, 0, 0}, {0, 0}, {0, 0}, {0, 0});
      real.push_row(0.002 * i, {0, 0.0, 0, 0}, {0, 0}, {0, 0}, {0, 0});
    }
    if (weighted_state_error(sim, real, 2) != 1.5) {
      detail = "T=2 hand case != 1.5";
      return false;
    }
  }

  // Point-mass-rod ground truth: the reduced model in which all four target
  // parameters drive the joint dynamics (the full parameterization is flat
  // in l2, which only locates the end effector).
  ModelParams truth;
  truth.r1 = truth.l1;
  truth.r2 = truth.l2;
  truth.I1 = truth.m1 * truth.l1 * truth.l1;
  truth.I2 = truth.m2 * truth.l2 * truth.l2;
  SysIdDataset data;
  data.trim_horizon = 1.5;
  for (int k = 0; k < 5; ++k) {
    Rng rng(derive_seed(4242, "oracle-traj", k));
    // Gentle multi-sine excitation: smooth swinging keeps the replay cost
    // landscape well conditioned over the +-50% parameter box.
    const double a1 = rng.uniform(0.3, 1.0), a2 = rng.uniform(0.3, 1.0);
    const double w1 = rng.uniform(1.0, 4.0), w2 = rng.uniform(1.0, 4.0);
    const double p1 = rng.uniform(0.0, 6.28), p2 = rng.uniform(0.0, 6.28);
    State x{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), 0, 0};
    Trajectory traj;
    traj.dt = 0.002;
    for (int i = 0; i <= 1000; ++i) {  // 2 s recorded, trimmed to 1.5 s
      const double t = i * 0.002;
      const TorquePair tau{a1 * std::sin(w1 * t + p1),
                           a2 * std::sin(w2 * t + p2)};
      traj.push_row(t, x, tau, tau, {0, 0});
      if (i < 1000) x = rk4_step(truth, x, tau, 0.002);
    }
    data.recordings.push_back(std::move(traj));
  }

  SysIdOptions options;
  options.free_params = {"m1", "m2", "l1", "l2"};
  options.bound_scale = 0.5;
  options.point_mass_links = true;
  options.de.seed = 777;
  options.de.max_generations = 400;
  options.de.tolerance = 1e-9;
  const SysIdResult fit = sysid_fit(truth, data, options);

  const double e_m1 = std::fabs(fit.params.m1 - truth.m1) / truth.m1;
  const double e_m2 = std::fabs(fit.params.m2 - truth.m2) / truth.m2;
  const double e_l1 = std::fabs(fit.params.l1 - truth.l1) / truth.l1;
  const double e_l2 = std::fabs(fit.params.l2 - truth.l2) / truth.l2;

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "cost=%.2e, rel err m1=%.1e m2=%.1e l1=%.1e l2=%.1e", fit.cost,
                e_m1, e_m2, e_l1, e_l2);
  detail = buf;
  return fit.cost < 1e-6 && e_m1 < 0.01 && e_m2 < 0.01 && e_l1 < 0.01 &&
         e_l2 < 0.01;
}

bool criterion_snes_sanity(std::string& detail) {
  const FitnessFn sphere = [](std::span<const double> x) {
    return -kernels::sum_sq(x.data(), x.size());
  };

  SnesConfig cfg;
  cfg.seed = 7;
  SnesState st = SnesState::init(std::vector<double>(20, 0.5), cfg);
  std::size_t evals = 0;
  bool sigma_ok = true;
  while (evals + st.population <= 10000) {
    snes_step(st, sphere);
    evals += st.population;
    for (double s : st.sigma) sigma_ok = sigma_ok && s > 0.0;
  }

  // Exact constant-shift invariance.
  auto run_shifted = [](double shift) {
    SnesConfig c;
    c.seed = 13;
    c.population = 10;
    SnesState s = SnesState::init(std::vector<double>(8, 1.0), c);
    const FitnessFn f = [shift](std::span<const double> x) {
      return shift - kernels::sum_sq(x.data(), x.size());
    };
    for (int g = 0; g < 30; ++g) snes_step(s, f);
    return s;
  };
  const SnesState a = run_shifted(0.0);
  const SnesState b = run_shifted(5000.0);
  const bool shift_ok = a.mean == b.mean && a.sigma == b.sigma;

  char buf[128];
  std::snprintf(buf, sizeof(buf), "best=%.2e in %zu evals, shift-invariant=%d",
                st.best_fitness, evals, shift_ok ? 1 : 0);
  detail = buf;
  return st.best_fitness > -1e-6 && sigma_ok && shift_ok;
}

bool criterion_end_to_end(std::string& detail) {
  const ModelParams p;

  EnergyLqrController baseline(RobotKind::pendubot, p);
  const Trajectory base_traj =
      rollout(baseline, RobotKind::pendubot, p, ImperfectionConfig{}, 10.0, 0.002);
  const bool baseline_ok = check_success(base_traj, p);

  TrainConfig cfg;  // default budget: 200 generations x population 16
  cfg.seed = 1;
  const TrainResult trained = snes_train_policy(RobotKind::pendubot, p, cfg);
  MlpPolicyController policy(trained.policy, RobotKind::pendubot, p);
  const Trajectory pol_traj =
      rollout(policy, RobotKind::pendubot, p, ImperfectionConfig{}, 10.0, 0.002);
  const ScoreReport score = score_trajectory(pol_traj, p, WeightSet::simulation(),
                                             "sim");

  // Same policy through the CLI surface: saved file, fresh process, nominal
  // trial must exit 0 (success).
  const fs::path dir = fs::temp_directory_path() /
                       ("dpbench_e2e_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  save_policy(dir / "policy.bin", trained.policy);
  const int cli_rc =
      run_cli("simulate --robot pendubot --controller policy --policy " +
              (dir / "policy.bin").string() + " --seed 1 --out " +
              (dir / "t.csv").string() + " --score-out " +
              (dir / "s.json").string());
  std::error_code ec;
  fs::remove_all(dir, ec);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "baseline success=%d, trained success=%d score=%.3f, cli rc=%d",
                baseline_ok ? 1 : 0, score.criteria.success ? 1 : 0, score.score,
                cli_rc);
  detail = buf;
  return baseline_ok && score.criteria.success && cli_rc == 0;
}

bool criterion_determinism(std::string& detail) {
  const fs::path dir =
      fs::temp_directory_path() / ("dpbench_acc_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  struct Cleanup {
    fs::path d;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(d, ec);
    }
  } cleanup{dir};

  auto path = [&dir](const char* name) { return (dir / name).string(); };

  // Full 10-trial evaluate, repeated and with different thread counts.
  const std::string eval_args =
      "evaluate --robot pendubot --controller baseline --trials 10 --seed 5 ";
  if (run_cli(eval_args + "--out " + path("e1.json")) != 0) {
    detail = "evaluate run failed";
    return false;
  }
  run_cli(eval_args + "--out " + path("e2.json"));
  run_cli(eval_args + "--threads 4 --out " + path("e3.json"));

  // Full robustness protocol, repeated and with different thread counts.
  const std::string rob_args =
      "robustness --robot pendubot --controller baseline --seed 5 ";
  if (run_cli(rob_args + "--out " + path("r1.json") + " --csv " + path("r1.csv")) != 0) {
    detail = "robustness run failed";
    return false;
  }
  run_cli(rob_args + "--out " + path("r2.json") + " --csv " + path("r2.csv"));
  run_cli(rob_args + "--threads 4 --out " + path("r3.json") + " --csv " +
          path("r3.csv"));

  const bool eval_ok =
      read_text_file(path("e1.json")) == read_text_file(path("e2.json")) &&
      read_text_file(path("e1.json")) == read_text_file(path("e3.json"));
  const bool rob_ok =
      read_text_file(path("r1.json")) == read_text_file(path("r2.json")) &&
      read_text_file(path("r1.json")) == read_text_file(path("r3.json")) &&
      read_text_file(path("r1.csv")) == read_text_file(path("r2.csv")) &&
      read_text_file(path("r1.csv")) == read_text_file(path("r3.csv"));

  detail = std::string("evaluate byte-identical=") + (eval_ok ? "yes" : "no") +
           ", robustness byte-identical=" + (rob_ok ? "yes" : "no");
  return eval_ok && rob_ok;
}

}  // namespace

int main() {
  std::printf("dpbench acceptance suite (kernel backend: %s)\n",
              std::string(kernels::backend_name(kernels::active())).c_str());

  timed(1, "score formula fidelity", criterion_score_formula);
  timed(2, "weight presets", criterion_weight_presets);
  timed(3, "dynamics oracle", criterion_dynamics_oracle);
  timed(4, "robustness protocol counts", criterion_robustness_counts);
  timed(5, "identity wrappers", criterion_identity_pipeline);
  timed(6, "reward fixpoint", criterion_reward_fixpoint);
  timed(7, "system-id oracle", criterion_sysid_oracle);
  timed(8, "snes sanity", criterion_snes_sanity);
  timed(9, "end-to-end swing-up", criterion_end_to_end);
  timed(10, "determinism", criterion_determinism);

  if (g_failures == 0) {
    std::printf("all 10 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
