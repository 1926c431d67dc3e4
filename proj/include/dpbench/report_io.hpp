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

#include <filesystem>
#include <string>
#include <vector>

#include "dpbench/model.hpp"
#include "dpbench/robustness.hpp"
#include "dpbench/scoring.hpp"
#include "dpbench/snes.hpp"

namespace dpbench {

/// Benchmark configuration shared by the CLI commands. Loadable from a JSON
/// file with the same keys; command-line flags override file values.
struct BenchConfig {
  RobotKind robot = RobotKind::pendubot;
  double dt = 0.002;
  double t_final = 10.0;
  double threshold = kDefaultSuccessThreshold;
  std::string weight_preset = "sim";  ///< "sim" or "hardware"
  std::string model_file;             ///< optional ModelParams JSON path
  std::uint64_t seed = 0;
  SweepRanges sweep;

  void validate() const;
  WeightSet weights() const;
};

/// One controller's protocol result: per-trial scores plus aggregates.
struct LeaderboardRow {
  std::string name;
  std::vector<double> trial_scores;
  double average = 0.0;
  double best = 0.0;
  std::size_t success_count = 0;
  std::size_t trials = 0;
};

LeaderboardRow make_leaderboard_row(const std::string& name,
                                    const std::vector<ScoreReport>& reports);

// ---- JSON serialization (stable key order, full double precision) ----

std::string model_params_to_json(const ModelParams& p);
ModelParams model_params_from_json(const std::string& text);

std::string score_report_to_json(const ScoreReport& report);
ScoreReport score_report_from_json(const std::string& text);

std::string robustness_report_to_json(const RobustnessReport& report);
RobustnessReport robustness_report_from_json(const std::string& text);

std::string leaderboard_row_to_json(const LeaderboardRow& row);
LeaderboardRow leaderboard_row_from_json(const std::string& text);

std::string bench_config_to_json(const BenchConfig& config);
BenchConfig bench_config_from_json(const std::string& text);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

// ---- CSV / table emission ----

/// `generation,best_cost,mean_cost` rows for optimizer progress.
void write_progress_csv(const std::filesystem::path& path,
                        const std::vector<ProgressRow>& rows);

/// `criterion,severity,success` rows for robustness sweep points.
void write_sweep_csv(const std::filesystem::path& path,
                     const std::vector<SweepPoint>& points);

/// Sorts rows by average desc, then best desc, then name asc.
void sort_leaderboard(std::vector<LeaderboardRow>& rows);

std::string leaderboard_markdown(const std::vector<LeaderboardRow>& rows);
std::string leaderboard_csv(const std::vector<LeaderboardRow>& rows);

}  // namespace dpbench
