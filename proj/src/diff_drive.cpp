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

#include "cotransport/diff_drive.hpp"

#include <stdexcept>

namespace cotransport {

Pose2D step_pose(const Pose2D& pose, const VelocityCommand& cmd, double dt,
                 double straight_line_omega) {
  if (!std::isfinite(pose.x) || !std::isfinite(pose.y) ||
      !std::isfinite(pose.theta) || !std::isfinite(cmd.v) ||
      !std::isfinite(cmd.omega) || !std::isfinite(dt)) {
    throw std::invalid_argument("step_pose: non-finite input");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("step_pose: dt must be > 0");

  const double th = pose.theta;
  const double dth = cmd.omega * dt;
  Pose2D out;
  if (std::abs(cmd.omega) >= straight_line_omega) {
    // (v/w)(sin(th + w dt) - sin th) rewritten through the half-angle
    // identity; same value, no cancellation for small w.
    const double half = 0.5 * dth;
    const double chord = half != 0.0 ? cmd.v * dt * std::sin(half) / half
                                     : cmd.v * dt;
    out.x = pose.x + chord * std::cos(th + half);
    out.y = pose.y + chord * std::sin(th + half);
  } else {
    out.x = pose.x + cmd.v * dt * std::cos(th);
    out.y = pose.y + cmd.v * dt * std::sin(th);
  }
  out.theta = wrap_angle(th + dth);
  return out;
}

}  // namespace cotransport
