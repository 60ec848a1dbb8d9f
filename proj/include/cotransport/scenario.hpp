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
#include <optional>
#include <string>
#include <vector>

#include "cotransport/types.hpp"
#include "cotransport/world.hpp"

namespace cotransport {

// Two end-effector trajectories with the same waypoint count, the platform
// start poses and the rod length.
struct Scenario {
  std::array<Trajectory3D, 2> trajectories;
  std::array<Pose2D, 2> starts;
  double load_length = 0.65;
  std::optional<World2D> world;
  std::vector<Point2D> planned_path;  // empty for analytic scenarios

  std::size_t n_d() const { return trajectories[0].size(); }
};

// Throws std::invalid_argument if the trajectories differ in length or the
// load length is not positive.
void validate_scenario(const Scenario& scenario);

namespace benchmark {
inline constexpr double kLoadLength = 0.65;
inline constexpr double kInnerRadius = 1.0;
inline constexpr double kOuterRadius = 1.65;
inline constexpr double kStraightLength = 1.0;
inline constexpr double kCarryHeight = 0.2;
inline constexpr double kGamma = 0.4;
inline constexpr double kDt = 0.08;
inline constexpr std::size_t kDefaultWaypoints = 60;
}  // namespace benchmark

// Straight 1 m, semicircle, straight 1 m for each robot: radius 1 m (robot 1,
// starting at (1, -1)) and 1.65 m (robot 2, starting at (1.65, -1)), both
// counter-clockwise about the origin and ending at (-1, -1) and (-1.65, -1),
// at 0.2 m height. Both trajectories use the same waypoint split between the
// legs and the arc, so paired waypoints are one load length apart. Start
// headings follow the first segment (+y). Throws for n_d < 4.
Scenario build_benchmark_scenario(std::size_t n_d = benchmark::kDefaultWaypoints);

// JSON scenario file ("format": "cotransport-scenario", "version": 1).
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

}  // namespace cotransport
