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

#include "dpbench/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dpbench {
namespace {

constexpr const char* kBaseHeader = "time,pos1,pos2,vel1,vel2,tau1,tau2";
constexpr const char* kExtHeader =
    "time,pos1,pos2,vel1,vel2,tau1,tau2,tau_des1,tau_des2,tau_pert1,tau_pert2";

// %.17g prints the shortest-ish representation that still round-trips any
// IEEE double exactly.
void append_value(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

std::vector<double> parse_row(const std::string& line, std::size_t expected,
                              std::size_t line_no) {
  std::vector<double> values;
  values.reserve(expected);
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string field =
        line.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    std::size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &consumed);
    } catch (const std::exception&) {
      throw std::runtime_error("trajectory CSV: bad number at line " +
                               std::to_string(line_no));
    }
    if (consumed != field.size())
      throw std::runtime_error("trajectory CSV: trailing junk at line " +
                               std::to_string(line_no));
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (values.size() != expected)
    throw std::runtime_error("trajectory CSV: expected " +
                             std::to_string(expected) + " columns at line " +
                             std::to_string(line_no));
  return values;
}

}  // namespace

void Trajectory::reserve(std::size_t rows) {
  for (auto* col : {&time, &q1, &q2, &qd1, &qd2, &tau1, &tau2, &tau_des1,
                    &tau_des2, &tau_pert1, &tau_pert2})
    col->reserve(rows);
}

void Trajectory::push_row(double t, const State& s, const TorquePair& applied,
                          const TorquePair& desired,
                          const TorquePair& perturbation) {
  time.push_back(t);
  q1.push_back(s.q1);
  q2.push_back(s.q2);
  qd1.push_back(s.qd1);
  qd2.push_back(s.qd2);
  tau1.push_back(applied[0]);
  tau2.push_back(applied[1]);
  tau_des1.push_back(desired[0]);
  tau_des2.push_back(desired[1]);
  tau_pert1.push_back(perturbation[0]);
  tau_pert2.push_back(perturbation[1]);
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& traj, bool extended) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open for writing: " + path.string());

  std::string line;
  out << (extended ? kExtHeader : kBaseHeader) << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    line.clear();
    const double* base[] = {&traj.time[i], &traj.q1[i],  &traj.q2[i],
                            &traj.qd1[i],  &traj.qd2[i], &traj.tau1[i],
                            &traj.tau2[i]};
    for (const double* v : base) {
      if (!line.empty()) line += ',';
      append_value(line, *v);
    }
    if (extended) {
      const double* ext[] = {&traj.tau_des1[i], &traj.tau_des2[i],
                             &traj.tau_pert1[i], &traj.tau_pert2[i]};
      for (const double* v : ext) {
        line += ',';
        append_value(line, *v);
      }
    }
    out << line << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path.string());

  std::string header;
  if (!std::getline(in, header))
    throw std::runtime_error("trajectory CSV: empty file " + path.string());
  if (!header.empty() && header.back() == '\r') header.pop_back();

  bool extended = false;
  if (header == kExtHeader) {
    extended = true;
  } else if (header != kBaseHeader) {
    throw std::runtime_error("trajectory CSV: unrecognized header in " +
                             path.string());
  }
  const std::size_t columns = extended ? 11 : 7;

  Trajectory traj;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto v = parse_row(line, columns, line_no);
    traj.push_row(v[0], State{v[1], v[2], v[3], v[4]}, {v[5], v[6]},
                  extended ? TorquePair{v[7], v[8]} : TorquePair{0.0, 0.0},
                  extended ? TorquePair{v[9], v[10]} : TorquePair{0.0, 0.0});
  }
  if (traj.size() >= 2) traj.dt = traj.time[1] - traj.time[0];
  return traj;
}

}  // namespace dpbench
