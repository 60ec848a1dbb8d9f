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

#include <span>

#include "cotransport/types.hpp"

namespace cotransport {

// Nearest point on a polyline. `t` is the clamped parameter on segment
// `segment_index` (between vertex i and i + 1).
struct PolylineProjection {
  Point2D foot;
  std::size_t segment_index = 0;
  double t = 0.0;
  double distance = 0.0;
};

// Globally nearest point on the polyline; equidistant segments resolve to the
// lowest segment index. Throws std::invalid_argument for fewer than 2 vertices.
PolylineProjection project_point_to_polyline(const Point2D& p,
                                             std::span<const Point2D> poly);

// Linear interpolation of the 3D waypoints of segment `segment_index`.
// Exact at t = 0 and t = 1. Throws std::out_of_range on a bad index and
// std::invalid_argument for t outside [0, 1].
Point3 lift_to_trajectory(const Trajectory3D& traj, std::size_t segment_index,
                          double t);

// Projects the XY of `p` onto the trajectory's XY polyline and lifts the foot
// back to 3D.
Point3 nearest_on_trajectory(const Point2D& p, const Trajectory3D& traj);

}  // namespace cotransport
