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

// Command-line front end: simulate, evaluate, robustness, sysid, train,
// leaderboard, plotdata.
//
// Exit codes: 0 success, 1 usage or IO error, 2 task failure (the swing-up
// did not succeed).

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpbench/de.hpp"
#include "dpbench/energy_lqr.hpp"
#include "dpbench/mlp_policy.hpp"
#include "dpbench/parallel.hpp"
#include "dpbench/perturbation.hpp"
#include "dpbench/report_io.hpp"
#include "dpbench/robustness.hpp"
#include "dpbench/rollout.hpp"
#include "dpbench/rng.hpp"
#include "dpbench/scoring.hpp"
#include "dpbench/sysid.hpp"
#include "dpbench/train.hpp"
#include "dpbench/trajectory.hpp"

namespace fs = std::filesystem;
using namespace dpbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTaskFailure = 2;

struct CommonOptions {
  std::string config_file;
  std::string robot = "pendubot";
  double dt = -1.0;
  double t_final = -1.0;
  double threshold = -1.0;
  std::string weight_preset;
  std::string model_file;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned threads = 1;

  std::string controller = "baseline";
  std::string policy_file;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool with_controller) {
  cmd->add_option("--config", opts.config_file, "benchmark config JSON file");
  cmd->add_option("--robot", opts.robot, "acrobot|pendubot");
  cmd->add_option("--dt", opts.dt, "control/integration step [s]");
  cmd->add_option("--t-final", opts.t_final, "trial length [s]");
  cmd->add_option("--threshold", opts.threshold, "success height [m]");
  cmd->add_option("--weights", opts.weight_preset, "sim|hardware");
  cmd->add_option("--model", opts.model_file, "ModelParams JSON file");
  cmd->add_option("--seed", opts.seed, "master seed")
      ->each([&opts](const std::string&) { opts.seed_set = true; });
  cmd->add_option("--threads", opts.threads, "worker threads");
  if (with_controller) {
    cmd->add_option("--controller", opts.controller, "baseline|zero|policy");
    cmd->add_option("--policy", opts.policy_file,
                    "policy file (with --controller policy)");
  }
}

/// Config file first, then explicit flags on top.
BenchConfig resolve_config(const CommonOptions& opts, const CLI::App* cmd) {
  BenchConfig config;
  if (!opts.config_file.empty())
    config = bench_config_from_json(read_text_file(opts.config_file));

  if (cmd->count("--robot") > 0 || opts.config_file.empty())
    config.robot = robot_kind_from_string(opts.robot);
  if (opts.dt > 0.0) config.dt = opts.dt;
  if (opts.t_final > 0.0) config.t_final = opts.t_final;
  if (opts.threshold >= 0.0) config.threshold = opts.threshold;
  if (!opts.weight_preset.empty()) config.weight_preset = opts.weight_preset;
  if (!opts.model_file.empty()) config.model_file = opts.model_file;
  if (opts.seed_set) config.seed = opts.seed;
  config.validate();
  return config;
}

ModelParams resolve_model(const BenchConfig& config) {
  if (config.model_file.empty()) return ModelParams{};
  return model_params_from_json(read_text_file(config.model_file));
}

ControllerFactory make_controller_factory(const CommonOptions& opts,
                                          const BenchConfig& config,
                                          const ModelParams& params) {
  const RobotKind kind = config.robot;
  if (opts.controller == "baseline")
    return [kind, params] {
      return std::make_unique<EnergyLqrController>(kind, params);
    };
  if (opts.controller == "zero")
    return [] { return std::make_unique<ZeroController>(); };
  if (opts.controller == "policy") {
    if (opts.policy_file.empty())
      throw std::runtime_error("--controller policy requires --policy FILE");
    const PolicyParams policy = load_policy(opts.policy_file);
    return [policy, kind, params] {
      return std::make_unique<MlpPolicyController>(policy, kind, params);
    };
  }
  throw std::runtime_error("unknown controller: " + opts.controller);
}

int cmd_simulate(const CommonOptions& opts, const CLI::App* cmd,
                 const std::string& traj_out, const std::string& score_out,
                 bool base_csv) {
  const BenchConfig config = resolve_config(opts, cmd);
  const ModelParams params = resolve_model(config);
  const auto factory = make_controller_factory(opts, config, params);

  auto controller = factory();
  ImperfectionConfig imp;
  imp.rng_seed = config.seed;
  const Trajectory traj = rollout(*controller, config.robot, params, imp,
                                  config.t_final, config.dt);
  const ScoreReport report = score_trajectory(
      traj, params, config.weights(), config.weight_preset, config.threshold);

  if (!traj_out.empty()) write_trajectory_csv(traj_out, traj, !base_csv);
  if (!score_out.empty()) write_text_file(score_out, score_report_to_json(report));

  std::printf("robot=%s controller=%s success=%d score=%.6f\n",
              std::string(to_string(config.robot)).c_str(),
              controller->name().data(), report.criteria.success ? 1 : 0,
              report.score);
  return report.criteria.success ? kExitOk : kExitTaskFailure;
}

int cmd_evaluate(const CommonOptions& opts, const CLI::App* cmd,
                 std::size_t trials, const std::string& name,
                 const std::string& row_out) {
  const BenchConfig config = resolve_config(opts, cmd);
  const ModelParams params = resolve_model(config);
  const auto factory = make_controller_factory(opts, config, params);

  std::vector<ScoreReport> reports(trials);
  parallel_for(trials, opts.threads, [&](std::size_t i) {
    const std::uint64_t trial_seed = derive_seed(config.seed, "trial", i);
    ImperfectionConfig imp;
    imp.perturbation = generate_perturbation_profile(
        trial_seed, config.t_final, config.sweep.perturbation);
    imp.rng_seed = trial_seed;
    auto controller = factory();
    const Trajectory traj = rollout(*controller, config.robot, params, imp,
                                    config.t_final, config.dt);
    reports[i] = score_trajectory(traj, params, config.weights(),
                                  config.weight_preset, config.threshold);
  });

  const std::string row_name = name.empty() ? opts.controller : name;
  const LeaderboardRow row = make_leaderboard_row(row_name, reports);
  if (!row_out.empty()) write_text_file(row_out, leaderboard_row_to_json(row));

  std::printf("controller=%s trials=%zu avg=%.6f best=%.6f successes=%zu\n",
              row_name.c_str(), row.trials, row.average, row.best,
              row.success_count);
  return kExitOk;
}

int cmd_robustness(const CommonOptions& opts, const CLI::App* cmd,
                   const std::string& report_out, const std::string& csv_out) {
  const BenchConfig config = resolve_config(opts, cmd);
  const ModelParams params = resolve_model(config);
  const auto factory = make_controller_factory(opts, config, params);

  RobustnessOptions options;
  options.t_final = config.t_final;
  options.dt = config.dt;
  options.threshold = config.threshold;
  options.seed = config.seed;
  options.threads = opts.threads;
  options.ranges = config.sweep;

  std::vector<SweepPoint> log;
  const RobustnessReport report = evaluate_robustness(
      factory, config.robot, params, options, csv_out.empty() ? nullptr : &log);

  if (!report_out.empty())
    write_text_file(report_out, robustness_report_to_json(report));
  if (!csv_out.empty()) write_sweep_csv(csv_out, log);

  std::printf(
      "model=%.4f vel_noise=%.4f torque_noise=%.4f response=%.4f delay=%.4f "
      "perturbation=%.4f final=%.6f\n",
      report.model_inaccuracy, report.velocity_noise, report.torque_noise,
      report.torque_response, report.time_delay, report.perturbation,
      report.final_score);
  return kExitOk;
}

int cmd_sysid(const CommonOptions& opts, const CLI::App* cmd,
              const std::string& data_dir, const std::string& params_out,
              const std::string& progress_out,
              const std::vector<std::string>& free_params, double bound_scale,
              bool point_mass, std::size_t runs, std::size_t generations,
              std::size_t population, double trim) {
  const BenchConfig config = resolve_config(opts, cmd);
  const ModelParams nominal = resolve_model(config);

  SysIdDataset data;
  data.trim_horizon = trim;
  std::vector<fs::path> files;
  if (!fs::is_directory(data_dir))
    throw std::runtime_error("sysid: not a directory: " + data_dir);
  for (const auto& entry : fs::directory_iterator(data_dir))
    if (entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("sysid: no trajectory CSV files in " + data_dir);
  for (const auto& file : files)
    data.recordings.push_back(read_trajectory_csv(file));

  SysIdOptions options;
  if (!free_params.empty()) options.free_params = free_params;
  options.bound_scale = bound_scale;
  options.point_mass_links = point_mass;
  options.de.max_generations = generations;
  options.de.population = population;
  options.de.seed = config.seed;
  options.de.threads = opts.threads;
  options.de.tolerance = 1.0e-10;

  const auto results = sysid_multi(nominal, data, options, runs);
  const SysIdResult& best = results.front();

  if (!params_out.empty())
    write_text_file(params_out, model_params_to_json(best.params));
  if (!progress_out.empty()) write_progress_csv(progress_out, best.history);

  std::printf("sysid: recordings=%zu runs=%zu best_cost=%.6e\n",
              data.recordings.size(), runs, best.cost);
  for (const auto& name : options.free_params)
    std::printf("  %s = %.8g\n", name.c_str(),
                get_model_param(best.params, name));
  return kExitOk;
}

int cmd_train(const CommonOptions& opts, const CLI::App* cmd,
              const std::string& policy_out, const std::string& progress_out,
              std::size_t generations, std::size_t population,
              const std::string& hidden_sizes_arg, std::uint32_t history,
              double sigma0, const std::string& fitness,
              const std::string& init, bool robust, std::size_t particles) {
  const BenchConfig config = resolve_config(opts, cmd);
  const ModelParams params = resolve_model(config);

  TrainConfig train;
  train.generations = generations;
  train.population = population;
  train.history_window = history;
  train.sigma_init = sigma0;
  train.fitness = fitness_kind_from_string(fitness);
  train.init = policy_init_from_string(init);
  train.robust = robust;
  train.particles = particles;
  train.disturbance = config.sweep.perturbation;
  train.t_final = config.t_final;
  train.dt = config.dt;
  train.threshold = config.threshold;
  train.weights = config.weights();
  train.seed = config.seed;
  train.threads = opts.threads;

  train.hidden.clear();
  std::size_t pos = 0;
  while (pos <= hidden_sizes_arg.size()) {
    const std::size_t comma = hidden_sizes_arg.find(',', pos);
    const std::string field = hidden_sizes_arg.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!field.empty())
      train.hidden.push_back(static_cast<std::uint32_t>(std::stoul(field)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (train.hidden.empty())
    throw std::runtime_error("train: --hidden must name at least one layer");

  const TrainResult result = snes_train_policy(config.robot, params, train);

  if (!policy_out.empty()) save_policy(policy_out, result.policy);
  if (!progress_out.empty()) write_progress_csv(progress_out, result.history);

  // Report the nominal-trial outcome of the trained policy.
  MlpPolicyController controller(result.policy, config.robot, params);
  const Trajectory traj = rollout(controller, config.robot, params,
                                  ImperfectionConfig{}, config.t_final, config.dt);
  const ScoreReport report = score_trajectory(
      traj, params, config.weights(), config.weight_preset, config.threshold);
  std::printf("train: best_fitness=%.6f nominal_success=%d nominal_score=%.6f\n",
              result.best_fitness, report.criteria.success ? 1 : 0, report.score);
  return kExitOk;
}

int cmd_leaderboard(const std::string& dir, const std::string& md_out,
                    const std::string& csv_out) {
  if (!fs::is_directory(dir))
    throw std::runtime_error("leaderboard: not a directory: " + dir);

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    throw std::runtime_error("leaderboard: no row JSON files in " + dir);

  std::vector<LeaderboardRow> rows;
  for (const auto& file : files)
    rows.push_back(leaderboard_row_from_json(read_text_file(file)));
  sort_leaderboard(rows);

  const std::string markdown = leaderboard_markdown(rows);
  if (!md_out.empty()) write_text_file(md_out, markdown);
  if (!csv_out.empty()) write_text_file(csv_out, leaderboard_csv(rows));
  std::fputs(markdown.c_str(), stdout);
  return kExitOk;
}

int cmd_plotdata(const std::string& in_file, const std::string& out_file) {
  const Trajectory traj = read_trajectory_csv(in_file);

  std::string text = "time,pos1,pos2,vel1,vel2,tau1,tau2,tau_pert1,tau_pert2\n";
  char buf[32];
  auto append = [&](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.17g%c", v, sep);
    text += buf;
  };
  for (std::size_t i = 0; i < traj.size(); ++i) {
    append(traj.time[i], ',');
    append(traj.q1[i], ',');
    append(traj.q2[i], ',');
    append(traj.qd1[i], ',');
    append(traj.qd2[i], ',');
    append(traj.tau1[i], ',');
    append(traj.tau2[i], ',');
    append(traj.tau_pert1[i], ',');
    append(traj.tau_pert2[i], '\n');
  }
  write_text_file(out_file, text);
  std::printf("plotdata: %zu rows -> %s\n", traj.size(), out_file.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Underactuated double pendulum swing-up benchmark"};
  app.require_subcommand(1);

  CommonOptions opts;

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run one nominal trial");
  std::string traj_out = "trajectory.csv";
  std::string score_out = "score.json";
  bool base_csv = false;
  add_common_flags(simulate, opts, true);
  simulate->add_option("--out", traj_out, "trajectory CSV output");
  simulate->add_option("--score-out", score_out, "score JSON output");
  simulate->add_flag("--base-csv", base_csv, "write the 7-column CSV form");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "10-trial perturbed protocol");
  std::size_t trials = 10;
  std::string eval_name;
  std::string row_out = "leaderboard_row.json";
  add_common_flags(evaluate, opts, true);
  evaluate->add_option("--trials", trials, "number of trials");
  evaluate->add_option("--name", eval_name, "controller name for the row");
  evaluate->add_option("--out", row_out, "leaderboard row JSON output");

  // robustness
  auto* robust = app.add_subcommand("robustness", "six-criterion evaluation");
  std::string report_out = "robustness.json";
  std::string points_out;
  add_common_flags(robust, opts, true);
  robust->add_option("--out", report_out, "report JSON output");
  robust->add_option("--csv", points_out, "per-point CSV output");

  // sysid
  auto* sysid = app.add_subcommand("sysid", "identify plant parameters");
  std::string data_dir;
  std::string params_out = "identified.json";
  std::string sysid_progress;
  std::vector<std::string> free_params;
  double bound_scale = 0.5;
  bool point_mass = false;
  std::size_t sysid_runs = 1;
  std::size_t sysid_generations = 400;
  std::size_t sysid_population = 0;
  double trim = 1.5;
  add_common_flags(sysid, opts, false);
  sysid->add_option("--data", data_dir, "directory of trajectory CSVs")
      ->required();
  sysid->add_option("--out", params_out, "identified parameters JSON");
  sysid->add_option("--progress", sysid_progress, "DE progress CSV");
  sysid->add_option("--free", free_params, "free parameter names")
      ->delimiter(',');
  sysid->add_option("--bound-scale", bound_scale, "bounds = nominal*(1 -+ s)");
  sysid->add_flag("--point-mass", point_mass,
                  "reduced point-mass-rod model (r_i = l_i, I_i = m_i l_i^2)");
  sysid->add_option("--runs", sysid_runs, "independent DE runs");
  sysid->add_option("--generations", sysid_generations, "DE generations");
  sysid->add_option("--population", sysid_population, "DE population (0=auto)");
  sysid->add_option("--trim", trim, "fit horizon per recording [s]");

  // train
  auto* train = app.add_subcommand("train", "SNES policy optimization");
  std::string policy_out = "policy.bin";
  std::string train_progress;
  std::size_t generations = 200;
  std::size_t population = 16;
  std::string hidden_sizes_arg = "16";
  std::uint32_t history = 0;
  double sigma0 = 0.2;
  std::string fitness = "score";
  std::string init = "pump";
  bool robust_train = false;
  std::size_t particles = 4;
  add_common_flags(train, opts, false);
  train->add_option("--out", policy_out, "policy file output");
  train->add_option("--progress", train_progress, "SNES progress CSV");
  train->add_option("--generations", generations, "SNES generations");
  train->add_option("--population", population, "SNES population");
  train->add_option("--hidden", hidden_sizes_arg, "hidden layer sizes, e.g. 16,16");
  train->add_option("--history", history, "velocity history window (0 or 12)");
  train->add_option("--sigma0", sigma0, "initial step size");
  train->add_option("--fitness", fitness,
                    "score|reward-history|reward-evolsac");
  train->add_option("--init", init, "pump|zero search mean initialization");
  train->add_flag("--robust", robust_train,
                  "average fitness over disturbance particles");
  train->add_option("--particles", particles, "particles when --robust");

  // leaderboard
  auto* leaderboard = app.add_subcommand("leaderboard", "aggregate row JSONs");
  std::string lb_dir;
  std::string md_out = "leaderboard.md";
  std::string lb_csv_out = "leaderboard.csv";
  leaderboard->add_option("--dir", lb_dir, "directory of row JSONs")->required();
  leaderboard->add_option("--out-md", md_out, "markdown output");
  leaderboard->add_option("--out-csv", lb_csv_out, "CSV output");

  // plotdata
  auto* plotdata = app.add_subcommand("plotdata", "emit plot-ready time series");
  std::string plot_in, plot_out = "plot.csv";
  plotdata->add_option("--in", plot_in, "trajectory CSV input")->required();
  plotdata->add_option("--out", plot_out, "plot CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (simulate->parsed())
      return cmd_simulate(opts, simulate, traj_out, score_out, base_csv);
    if (evaluate->parsed())
      return cmd_evaluate(opts, evaluate, trials, eval_name, row_out);
    if (robust->parsed())
      return cmd_robustness(opts, robust, report_out, points_out);
    if (sysid->parsed())
      return cmd_sysid(opts, sysid, data_dir, params_out, sysid_progress,
                       free_params, bound_scale, point_mass, sysid_runs,
                       sysid_generations, sysid_population, trim);
    if (train->parsed())
      return cmd_train(opts, train, policy_out, train_progress, generations,
                       population, hidden_sizes_arg, history, sigma0, fitness, init,
                       robust_train, particles);
    if (leaderboard->parsed())
      return cmd_leaderboard(lb_dir, md_out, lb_csv_out);
    if (plotdata->parsed()) return cmd_plotdata(plot_in, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
