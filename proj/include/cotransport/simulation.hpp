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

#include "cotransport/ik.hpp"
#include "cotransport/robot.hpp"
#include "cotransport/scenario.hpp"
#include "cotransport/sim_log.hpp"
#include "cotransport/slq_mpc.hpp"
#include "cotransport/velocity_sampling.hpp"

namespace cotransport {

enum class Method {
  kPngLeaderFollower,       // png-lf
  kSamplingLeaderFollower,  // rrt-lf
  kSlqMpc,                  // slq-mpc
};

std::string method_name(Method m);
// Accepts "png-lf", "rrt-lf", "slq-mpc" (and the underscore spellings).
Method parse_method(const std::string& name);

struct MpcSettings {
  MpcProblem problem;           // robot and reference are filled per run
  double reference_speed = 0.2;  // m/s on the longest segment of either trajectory
  double settle_time = 20.0;     // s allowed after the reference ends
};

struct SimulationConfig {
  RobotConfig robot;  // both robots share the platform and arm
  double navigation_constant = 6.0;
  double v_cruise = 0.2;
  SamplingOptions sampling;
  MpcSettings mpc;
  IkOptions ik;
  std::size_t leader = 0;  // index of the leader robot
  std::size_t step_budget = 100000;
  std::size_t n_d = 60;    // benchmark waypoint count
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument for out-of-range settings.
void validate_simulation_config(const SimulationConfig& cfg);

// Runs one method end to end and returns the full log. Budget expiry is not
// an error: the log comes back with completed = false.
SimulationLog run_simulation(const Scenario& scenario, const SimulationConfig& cfg,
                             Method method);

// Time-parametrised end-effector reference used by the MPC comparator: both
// robots advance one waypoint per segment_time, so paired points stay paired.
struct TimedReference {
  const Trajectory3D* trajectory = nullptr;
  double segment_time = 1.0;

  Point3 at(double t) const;
  double end_time() const;
};

}  // namespace cotransport
