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

#include "dpbench/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dpbench/sysid.hpp"

namespace dpbench {
namespace {

using nlohmann::json;

json sweep_ranges_to_json(const SweepRanges& r) {
  return json{{"steps", r.steps},
              {"vel_noise_max", r.vel_noise_max},
              {"torque_noise_max", r.torque_noise_max},
              {"k_resp_floor", r.k_resp_floor},
              {"delay_max", r.delay_max},
              {"model_scale_min", r.model_scale_min},
              {"model_scale_max", r.model_scale_max},
              {"perturbation_profiles", r.perturbation_profiles},
              {"perturbation",
               {{"bump_count", r.perturbation.bump_count},
                {"amp_min", r.perturbation.amp_min},
                {"amp_max", r.perturbation.amp_max},
                {"width_min", r.perturbation.width_min},
                {"width_max", r.perturbation.width_max}}}};
}

SweepRanges sweep_ranges_from_json(const json& j) {
  SweepRanges r;
  r.steps = j.value("steps", r.steps);
  r.vel_noise_max = j.value("vel_noise_max", r.vel_noise_max);
  r.torque_noise_max = j.value("torque_noise_max", r.torque_noise_max);
  r.k_resp_floor = j.value("k_resp_floor", r.k_resp_floor);
  r.delay_max = j.value("delay_max", r.delay_max);
  r.model_scale_min = j.value("model_scale_min", r.model_scale_min);
  r.model_scale_max = j.value("model_scale_max", r.model_scale_max);
  r.perturbation_profiles =
      j.value("perturbation_profiles", r.perturbation_profiles);
  if (j.contains("perturbation")) {
    const json& p = j.at("perturbation");
    r.perturbation.bump_count = p.value("bump_count", r.perturbation.bump_count);
    r.perturbation.amp_min = p.value("amp_min", r.perturbation.amp_min);
    r.perturbation.amp_max = p.value("amp_max", r.perturbation.amp_max);
    r.perturbation.width_min = p.value("width_min", r.perturbation.width_min);
    r.perturbation.width_max = p.value("width_max", r.perturbation.width_max);
  }
  return r;
}

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw std::runtime_error(std::string("malformed JSON for ") + what);
  return j;
}

void append_csv_value(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

void BenchConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("BenchConfig: dt must be > 0");
  if (!(t_final > 0.0))
    throw std::invalid_argument("BenchConfig: t_final must be > 0");
  if (weight_preset != "sim" && weight_preset != "hardware")
    throw std::invalid_argument("BenchConfig: weight_preset must be sim|hardware");
  sweep.validate();
}

WeightSet BenchConfig::weights() const {
  return weight_preset == "hardware" ? WeightSet::hardware()
                                     : WeightSet::simulation();
}

LeaderboardRow make_leaderboard_row(const std::string& name,
                                    const std::vector<ScoreReport>& reports) {
  LeaderboardRow row;
  row.name = name;
  row.trials = reports.size();
  row.best = 0.0;
  for (const auto& r : reports) {
    row.trial_scores.push_back(r.score);
    row.best = std::max(row.best, r.score);
    row.success_count += r.criteria.success ? 1 : 0;
  }
  row.average = average_score(reports);
  return row;
}

std::string model_params_to_json(const ModelParams& p) {
  json j;
  for (const auto& name : model_param_names()) j[name] = get_model_param(p, name);
  return j.dump(2) + "\n";
}

ModelParams model_params_from_json(const std::string& text) {
  const json j = parse(text, "ModelParams");
  ModelParams p;
  for (const auto& name : model_param_names())
    if (j.contains(name)) set_model_param(p, name, j.at(name).get<double>());
  p.validate();
  return p;
}

std::string score_report_to_json(const ScoreReport& report) {
  const json j{{"success", report.criteria.success},
               {"swingup_time", report.criteria.swingup_time},
               {"energy", report.criteria.energy},
               {"torque_cost", report.criteria.torque_cost},
               {"torque_smoothness", report.criteria.torque_smoothness},
               {"velocity_cost", report.criteria.velocity_cost},
               {"score", report.score},
               {"weight_preset", report.weight_preset}};
  return j.dump(2) + "\n";
}

ScoreReport score_report_from_json(const std::string& text) {
  const json j = parse(text, "ScoreReport");
  ScoreReport report;
  report.criteria.success = j.at("success").get<bool>();
  report.criteria.swingup_time = j.at("swingup_time").get<double>();
  report.criteria.energy = j.at("energy").get<double>();
  report.criteria.torque_cost = j.at("torque_cost").get<double>();
  report.criteria.torque_smoothness = j.at("torque_smoothness").get<double>();
  report.criteria.velocity_cost = j.at("velocity_cost").get<double>();
  report.score = j.at("score").get<double>();
  report.weight_preset = j.at("weight_preset").get<std::string>();
  report.weights = report.weight_preset == "hardware" ? WeightSet::hardware()
                                                      : WeightSet::simulation();
  return report;
}

std::string robustness_report_to_json(const RobustnessReport& report) {
  const json j{{"model_inaccuracy", report.model_inaccuracy},
               {"velocity_noise", report.velocity_noise},
               {"torque_noise", report.torque_noise},
               {"torque_response", report.torque_response},
               {"time_delay", report.time_delay},
               {"perturbation", report.perturbation},
               {"final", report.final_score}};
  return j.dump(2) + "\n";
}

RobustnessReport robustness_report_from_json(const std::string& text) {
  const json j = parse(text, "RobustnessReport");
  RobustnessReport report;
  report.model_inaccuracy = j.at("model_inaccuracy").get<double>();
  report.velocity_noise = j.at("velocity_noise").get<double>();
  report.torque_noise = j.at("torque_noise").get<double>();
  report.torque_response = j.at("torque_response").get<double>();
  report.time_delay = j.at("time_delay").get<double>();
  report.perturbation = j.at("perturbation").get<double>();
  report.final_score = j.at("final").get<double>();
  return report;
}

std::string leaderboard_row_to_json(const LeaderboardRow& row) {
  const json j{{"name", row.name},
               {"trial_scores", row.trial_scores},
               {"average", row.average},
               {"best", row.best},
               {"success_count", row.success_count},
               {"trials", row.trials}};
  return j.dump(2) + "\n";
}

LeaderboardRow leaderboard_row_from_json(const std::string& text) {
  const json j = parse(text, "LeaderboardRow");
  LeaderboardRow row;
  row.name = j.at("name").get<std::string>();
  row.trial_scores = j.at("trial_scores").get<std::vector<double>>();
  row.average = j.at("average").get<double>();
  row.best = j.at("best").get<double>();
  row.success_count = j.at("success_count").get<std::size_t>();
  row.trials = j.at("trials").get<std::size_t>();
  return row;
}

std::string bench_config_to_json(const BenchConfig& config) {
  const json j{{"robot", std::string(to_string(config.robot))},
               {"dt", config.dt},
               {"t_final", config.t_final},
               {"threshold", config.threshold},
               {"weight_preset", config.weight_preset},
               {"model_file", config.model_file},
               {"seed", config.seed},
               {"sweep", sweep_ranges_to_json(config.sweep)}};
  return j.dump(2) + "\n";
}

BenchConfig bench_config_from_json(const std::string& text) {
  const json j = parse(text, "BenchConfig");
  BenchConfig config;
  if (j.contains("robot"))
    config.robot = robot_kind_from_string(j.at("robot").get<std::string>());
  config.dt = j.value("dt", config.dt);
  config.t_final = j.value("t_final", config.t_final);
  config.threshold = j.value("threshold", config.threshold);
  config.weight_preset = j.value("weight_preset", config.weight_preset);
  config.model_file = j.value("model_file", config.model_file);
  config.seed = j.value("seed", config.seed);
  if (j.contains("sweep")) config.sweep = sweep_ranges_from_json(j.at("sweep"));
  config.validate();
  return config;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_progress_csv(const std::filesystem::path& path,
                        const std::vector<ProgressRow>& rows) {
  std::string text = "generation,best_cost,mean_cost\n";
  for (const auto& row : rows) {
    text += std::to_string(row.generation);
    text += ',';
    append_csv_value(text, row.best);
    text += ',';
    append_csv_value(text, row.mean);
    text += '\n';
  }
  write_text_file(path, text);
}

void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepPoint>& points) {
  std::string text = "criterion,severity,success\n";
  for (const auto& point : points) {
    text += point.criterion;
    text += ',';
    append_csv_value(text, point.severity);
    text += ',';
    text += point.success ? '1' : '0';
    text += '\n';
  }
  write_text_file(path, text);
}

void sort_leaderboard(std::vector<LeaderboardRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const LeaderboardRow& a, const LeaderboardRow& b) {
              if (a.average != b.average) return a.average > b.average;
              if (a.best != b.best) return a.best > b.best;
              return a.name < b.name;
            });
}

std::string leaderboard_markdown(const std::vector<LeaderboardRow>& rows) {
  std::string text =
      "| Rank | Controller | Avg score | Best score | Successes |\n"
      "|-----:|------------|----------:|-----------:|----------:|\n";
  char buf[128];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::snprintf(buf, sizeof(buf), "| %zu | %s | %.4f | %.4f | %zu/%zu |\n",
                  i + 1, r.name.c_str(), r.average, r.best, r.success_count,
                  r.trials);
    text += buf;
  }
  return text;
}

std::string leaderboard_csv(const std::vector<LeaderboardRow>& rows) {
  std::string text = "rank,name,average,best,success_count,trials\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    text += std::to_string(i + 1);
    text += ',';
    text += r.name;
    text += ',';
    append_csv_value(text, r.average);
    text += ',';
    append_csv_value(text, r.best);
    text += ',';
    text += std::to_string(r.success_count);
    text += ',';
    text += std::to_string(r.trials);
    text += '\n';
  }
  return text;
}

}  // namespace dpbench
