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
#include <vector>

#include "cotransport/sim_log.hpp"
#include "cotransport/types.hpp"

namespace cotransport {

// Distance from a world point to its nearest point on the trajectory, found by
// projecting onto the XY polyline and lifting back to 3D.
double tracking_error(const Point3& ee, const Trajectory3D& traj);

std::vector<double> load_length_series(const SimulationLog& log);

std::array<std::vector<double>, 2> tracking_error_series(
    const SimulationLog& log, const std::array<Trajectory3D, 2>& trajectories);

struct MetricsSummary {
  double max_load_deviation = 0.0;
  double mean_load_deviation = 0.0;
  // Max deviation restricted to steps where the follower solve converged.
  double max_load_deviation_converged = 0.0;
  std::array<double, 2> mean_tracking_error{0.0, 0.0};
  double duration = 0.0;
  bool completed = false;
  std::size_t steps = 0;
  double follower_convergence_rate = 1.0;
};

// Uses the err and load_len columns already stored in the log.
MetricsSummary summarize(const SimulationLog& log);

}  // namespace cotransport
