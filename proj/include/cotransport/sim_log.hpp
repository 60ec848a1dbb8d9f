// Copyright 2026 The cotransport Authors
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
#include <cstdint>
#include <string>
#include <vector>

#include "cotransport/types.hpp"

namespace cotransport {

struct RobotSample {
  Pose2D pose;
  VelocityCommand cmd;
  Vector4d beta = Vector4d::Zero();
  Point3 ee = Point3::Zero();         // world frame
  Point3 candidate = Point3::Zero();  // IK target (or MPC reference point)
  bool stop = false;
  bool ik_converged = true;
  double ik_violation = 0.0;
};

// One row per control step. `p` and the stop flags are the coordinator state
// after the step; `cmd` is the command applied during it.
struct LogRecord {
  double t = 0.0;
  std::array<RobotSample, 2> robots;
  std::size_t p = 1;
  double load_len = 0.0;
  std::array<double, 2> err{0.0, 0.0};
};

struct SimulationLog {
  std::vector<LogRecord> records;
  std::string method;
  std::uint64_t seed = 0;
  std::string config_hash;
  bool completed = false;
  std::size_t leader = 0;
  std::size_t n_d = 0;
  double load_length = 0.0;
};

}  // namespace cotransport
