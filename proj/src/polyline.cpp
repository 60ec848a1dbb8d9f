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

#include "cotransport/polyline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cotransport {

PolylineProjection project_point_to_polyline(const Point2D& p,
                                             std::span<const Point2D> poly) {
  if (poly.size() < 2) {
    throw std::invalid_argument("project_point_to_polyline: empty polyline");
  }
  PolylineProjection best;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const Point2D a = poly[i];
    const Point2D ab = poly[i + 1] - a;
    const double len2 = ab.squaredNorm();
    double t = 0.0;
    if (len2 > 0.0) {
      t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    }
    const Point2D foot = a + t * ab;
    const double d2 = (p - foot).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best.foot = foot;
      best.segment_index = i;
      best.t = t;
    }
  }
  best.distance = std::sqrt(best_d2);
  return best;
}

Point3 lift_to_trajectory(const Trajectory3D& traj, std::size_t segment_index,
                          double t) {
  if (segment_index + 1 >= traj.size()) {
    throw std::out_of_range("lift_to_trajectory: segment index " +
                            std::to_string(segment_index) + " out of range");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("lift_to_trajectory: t outside [0, 1]");
  }
  return traj[segment_index] * (1.0 - t) + traj[segment_index + 1] * t;
}

Point3 nearest_on_trajectory(const Point2D& p, const Trajectory3D& traj) {
  const auto poly = traj.projection();
  const auto proj = project_point_to_polyline(p, poly);
  return lift_to_trajectory(traj, proj.segment_index, proj.t);
}

}  // namespace cotransport
