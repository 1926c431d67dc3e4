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

#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dpbench/mlp_policy.hpp"
#include "dpbench/report_io.hpp"
#include "dpbench/rng.hpp"
#include "dpbench/trajectory.hpp"

using namespace dpbench;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dpbench_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

Trajectory random_trajectory(Rng& rng, std::size_t rows) {
  Trajectory t;
  t.dt = 0.002;
  for (std::size_t i = 0; i < rows; ++i) {
    t.push_row(static_cast<double>(i) * t.dt,
               {rng.normal() * 3, rng.normal() * 3, rng.normal() * 10,
                rng.normal() * 10},
               {rng.normal(), rng.normal()}, {rng.normal(), rng.normal()},
               {rng.normal(), rng.normal()});
  }
  return t;
}

}  // namespace

TEST_CASE("trajectory csv round-trips every double exactly") {
  TempDir dir;
  Rng rng(808);
  const Trajectory t = random_trajectory(rng, 64);

  SUBCASE("extended form") {
    const fs::path file = dir.path / "ext.csv";
    write_trajectory_csv(file, t, true);
    const Trajectory back = read_trajectory_csv(file);
    REQUIRE(back.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(back.time[i] == t.time[i]);
      CHECK(back.q1[i] == t.q1[i]);
      CHECK(back.q2[i] == t.q2[i]);
      CHECK(back.qd1[i] == t.qd1[i]);
      CHECK(back.qd2[i] == t.qd2[i]);
      CHECK(back.tau1[i] == t.tau1[i]);
      CHECK(back.tau2[i] == t.tau2[i]);
      CHECK(back.tau_des1[i] == t.tau_des1[i]);
      CHECK(back.tau_pert2[i] == t.tau_pert2[i]);
    }
    CHECK(back.dt == doctest::Approx(t.dt).epsilon(1e-12));
  }
  SUBCASE("base form loads zeros for the extended columns") {
    const fs::path file = dir.path / "base.csv";
    write_trajectory_csv(file, t, false);
    const Trajectory back = read_trajectory_csv(file);
    REQUIRE(back.size() == t.size());
    CHECK(back.tau1[3] == t.tau1[3]);
    CHECK(back.tau_des1[3] == 0.0);
    CHECK(back.tau_pert1[3] == 0.0);
  }
  SUBCASE("rewrite is byte identical") {
    const fs::path a = dir.path / "a.csv";
    const fs::path b = dir.path / "b.csv";
    write_trajectory_csv(a, t, true);
    write_trajectory_csv(b, t, true);
    CHECK(read_text_file(a) == read_text_file(b));
  }
  SUBCASE("malformed input is rejected") {
    const fs::path file = dir.path / "bad.csv";
    write_text_file(file, "time,pos1,pos2\n0,0,0\n");
    CHECK_THROWS_AS(read_trajectory_csv(file), std::runtime_error);
    write_text_file(file,
                    "time,pos1,pos2,vel1,vel2,tau1,tau2\n0,0,zero,0,0,0,0\n");
    CHECK_THROWS_AS(read_trajectory_csv(file), std::runtime_error);
    CHECK_THROWS_AS(read_trajectory_csv(dir.path / "missing.csv"),
                    std::runtime_error);
  }
}

TEST_CASE("model params json round-trip") {
  ModelParams p;
  p.m2 = 0.6125;
  p.cf1 = 0.017;
  const std::string text = model_params_to_json(p);
  const ModelParams back = model_params_from_json(text);
  CHECK(back.m2 == p.m2);
  CHECK(back.cf1 == p.cf1);
  CHECK(back.tau_limit1 == p.tau_limit1);

  SUBCASE("partial json keeps defaults for missing keys") {
    const ModelParams partial = model_params_from_json("{\"m1\": 0.7}");
    CHECK(partial.m1 == 0.7);
    CHECK(partial.l1 == ModelParams{}.l1);
  }
  SUBCASE("invalid values are rejected") {
    CHECK_THROWS_AS(model_params_from_json("{\"m1\": -1.0}"),
                    std::invalid_argument);
    CHECK_THROWS_AS(model_params_from_json("not json"), std::runtime_error);
  }
}

TEST_CASE("score report json round-trip") {
  ScoreReport r;
  r.criteria = {true, 1.25, 3.5, 2.25, 0.125, 40.0};
  r.weights = WeightSet::hardware();
  r.weight_preset = "hardware";
  r.score = 0.625;
  const ScoreReport back = score_report_from_json(score_report_to_json(r));
  CHECK(back.criteria.success == r.criteria.success);
  CHECK(back.criteria.swingup_time == r.criteria.swingup_time);
  CHECK(back.criteria.energy == r.criteria.energy);
  CHECK(back.criteria.torque_cost == r.criteria.torque_cost);
  CHECK(back.criteria.torque_smoothness == r.criteria.torque_smoothness);
  CHECK(back.criteria.velocity_cost == r.criteria.velocity_cost);
  CHECK(back.score == r.score);
  CHECK(back.weight_preset == "hardware");
}

TEST_CASE("robustness report json round-trip") {
  const RobustnessReport r =
      robustness_score(0.5, 0.625, 1.0, 0.25, 0.75, 0.125);
  const RobustnessReport back =
      robustness_report_from_json(robustness_report_to_json(r));
  CHECK(back.model_inaccuracy == r.model_inaccuracy);
  CHECK(back.velocity_noise == r.velocity_noise);
  CHECK(back.torque_noise == r.torque_noise);
  CHECK(back.torque_response == r.torque_response);
  CHECK(back.time_delay == r.time_delay);
  CHECK(back.perturbation == r.perturbation);
  CHECK(back.final_score == r.final_score);
}

TEST_CASE("bench config json") {
  BenchConfig cfg;
  cfg.robot = RobotKind::acrobot;
  cfg.seed = 99;
  cfg.sweep.steps = 11;
  cfg.sweep.perturbation.amp_max = 2.5;
  const BenchConfig back = bench_config_from_json(bench_config_to_json(cfg));
  CHECK(back.robot == RobotKind::acrobot);
  CHECK(back.seed == 99);
  CHECK(back.sweep.steps == 11);
  CHECK(back.sweep.perturbation.amp_max == 2.5);

  SUBCASE("partial config file") {
    const BenchConfig partial =
        bench_config_from_json("{\"robot\": \"pendubot\", \"dt\": 0.004}");
    CHECK(partial.robot == RobotKind::pendubot);
    CHECK(partial.dt == 0.004);
    CHECK(partial.t_final == 10.0);
  }
  SUBCASE("invalid preset rejected") {
    CHECK_THROWS_AS(bench_config_from_json("{\"weight_preset\": \"other\"}"),
                    std::invalid_argument);
  }
}

TEST_CASE("policy file round-trip") {
  TempDir dir;
  Rng rng(11);
  PolicyParams p = PolicyParams::zeros(std::vector<std::uint32_t>{16, 8}, 12);
  for (auto& w : p.params) w = rng.normal();

  const fs::path file = dir.path / "policy.bin";
  save_policy(file, p);
  const PolicyParams back = load_policy(file);
  CHECK(back.layer_sizes == p.layer_sizes);
  CHECK(back.history_window == p.history_window);
  CHECK(back.params == p.params);

  SUBCASE("magic check") {
    std::string bytes = read_text_file(file);
    bytes[0] = 'X';
    write_text_file(file, bytes);
    CHECK_THROWS_AS(load_policy(file), std::runtime_error);
  }
  SUBCASE("truncation check") {
    std::string bytes = read_text_file(file);
    bytes.resize(bytes.size() - 16);
    write_text_file(file, bytes);
    CHECK_THROWS_AS(load_policy(file), std::runtime_error);
  }
}

TEST_CASE("leaderboard row aggregation and sorting") {
  std::vector<ScoreReport> reports(3);
  reports[0].score = 0.5;
  reports[0].criteria.success = true;
  reports[1].score = 0.0;
  reports[1].criteria.success = false;
  reports[2].score = 0.7;
  reports[2].criteria.success = true;
  const LeaderboardRow row = make_leaderboard_row("alpha", reports);
  CHECK(row.average == doctest::Approx(0.4));
  CHECK(row.best == doctest::Approx(0.7));
  CHECK(row.success_count == 2);
  CHECK(row.trials == 3);

  const LeaderboardRow back = leaderboard_row_from_json(leaderboard_row_to_json(row));
  CHECK(back.name == "alpha");
  CHECK(back.trial_scores == row.trial_scores);
  CHECK(back.average == row.average);

  SUBCASE("single row renders a single-row table") {
    const std::vector<LeaderboardRow> one{row};
    const std::string md = leaderboard_markdown(one);
    std::size_t data_lines = 0;
    for (std::size_t pos = md.find("| 1 |"); pos != std::string::npos;
         pos = md.find("\n| ", pos + 1))
      ++data_lines;
    CHECK(data_lines == 1);
    CHECK(md.find("| 1 | alpha |") != std::string::npos);
  }
  SUBCASE("sorting: average desc, then best desc, then name asc") {
    LeaderboardRow first, second, third, fourth;
    first.name = "delta";
    first.average = 0.65;
    first.best = 0.7;
    second.name = "bravo";
    second.average = 0.64;
    second.best = 0.9;
    third.name = "alpha";
    third.average = 0.64;
    third.best = 0.8;
    fourth.name = "charlie";
    fourth.average = 0.64;
    fourth.best = 0.8;
    std::vector<LeaderboardRow> rows{third, first, fourth, second};
    sort_leaderboard(rows);
    CHECK(rows[0].name == "delta");   // 0.65 beats every 0.64
    CHECK(rows[1].name == "bravo");   // best 0.9 breaks the average tie
    CHECK(rows[2].name == "alpha");   // name breaks the full tie
    CHECK(rows[3].name == "charlie");

    const std::string md = leaderboard_markdown(rows);
    CHECK(md.find("| 1 | delta |") != std::string::npos);
    const std::string csv = leaderboard_csv(rows);
    CHECK(csv.rfind("rank,name,average,best,success_count,trials\n", 0) == 0);
    CHECK(csv.find("1,delta,") != std::string::npos);
  }
}

TEST_CASE("progress and sweep csv emission") {
  TempDir dir;
  const std::vector<ProgressRow> rows{{0, -1.5, -2.5}, {1, -0.5, -1.0}};
  const fs::path progress = dir.path / "progress.csv";
  write_progress_csv(progress, rows);
  const std::string text = read_text_file(progress);
  CHECK(text.rfind("generation,best_cost,mean_cost\n", 0) == 0);
  CHECK(text.find("0,-1.5,-2.5\n") != std::string::npos);
  CHECK(text.find("1,-0.5,-1\n") != std::string::npos);

  const std::vector<SweepPoint> points{{"vel_noise", 0.25, true},
                                       {"model:m1", 1.25, false}};
  const fs::path sweep = dir.path / "sweep.csv";
  write_sweep_csv(sweep, points);
  const std::string sweep_text = read_text_file(sweep);
  CHECK(sweep_text.rfind("criterion,severity,success\n", 0) == 0);
  CHECK(sweep_text.find("vel_noise,0.25,1\n") != std::string::npos);
  CHECK(sweep_text.find("model:m1,1.25,0\n") != std::string::npos);
}
