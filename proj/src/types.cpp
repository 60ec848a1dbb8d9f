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

#include "cotransport/types.hpp"

#include <string>

namespace cotransport {

double wrap_angle(double a) {
  if (!std::isfinite(a)) {
    throw std::invalid_argument("wrap_angle: non-finite angle");
  }
  // Values already in range are returned untouched so wrapping is idempotent.
  if (a >= -kPi && a < kPi) return a;
  double r = std::fmod(a + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  const double out = r - kPi;
  return out < kPi ? out : -kPi;
}

Pose2D make_pose(double x, double y, double theta) {
  return Pose2D{x, y, wrap_angle(theta)};
}

Trajectory3D::Trajectory3D(std::vector<Point3> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.size() < 2) {
    throw std::invalid_argument("Trajectory3D: needs at least 2 waypoints");
  }
  for (std::size_t i = 0; i < waypoints_.size(); ++i) {
    if (!waypoints_[i].allFinite()) {
      throw std::invalid_argument("Trajectory3D: non-finite waypoint " +
                                  std::to_string(i));
    }
    if (i > 0 && waypoints_[i] == waypoints_[i - 1]) {
      throw std::invalid_argument("Trajectory3D: repeated waypoint at " +
                                  std::to_string(i));
    }
  }
}

std::vector<Point2D> Trajectory3D::projection() const {
  std::vector<Point2D> out;
  out.reserve(waypoints_.size());
  for (const auto& w : waypoints_) out.emplace_back(w.x(), w.y());
  return out;
}

double Trajectory3D::arc_length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints_.size(); ++i) {
    total += (waypoints_[i] - waypoints_[i - 1]).norm();
  }
  return total;
}

}  // namespace cotransport
