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

#include "cotransport/guidance.hpp"

#include <algorithm>
#include <cmath>

namespace cotransport {

double los_angle(const Pose2D& pose, const Point2D& target) {
  const double dx = target.x() - pose.x;
  const double dy = target.y() - pose.y;
  if (dx == 0.0 && dy == 0.0) {
    throw DegenerateLosError("los_angle: base coincides with target");
  }
  return wrap_angle(std::atan2(dy, dx));
}

PngCommand png_step(const PngState& state, const Pose2D& pose,
                    const Point2D& target, double dt, double omega_max) {
  if (!(dt > 0.0)) throw std::invalid_argument("png_step: dt must be > 0");
  const double los = los_angle(pose, target);
  auto clamp_omega = [omega_max](double w) {
    return std::clamp(w, -omega_max, omega_max);
  };

  PngCommand out;
  out.state = state;
  if (!state.prev_los) {
    const double heading_error = wrap_angle(los - pose.theta);
    out.cmd.omega = clamp_omega(heading_error / dt);
    if (std::abs(heading_error) > 0.5 * kPi) {
      out.cmd.v = 0.0;  // pre-rotation, target stays fresh
      return out;
    }
    out.cmd.v = state.v_cruise;
    out.state.prev_los = los;
    return out;
  }

  const double v = state.v_cruise;
  const double los_rate = wrap_angle(los - *state.prev_los) / dt;
  const double normal_accel = state.navigation_constant * los_rate * v;
  out.cmd.v = v;
  out.cmd.omega = clamp_omega(normal_accel / v);
  out.state.prev_los = los;
  return out;
}

double reachability_radius(const RobotConfig& cfg) { return cfg.gamma * cfg.rho_l; }

bool reached(const Pose2D& pose, const Point2D& target, double rho_d) {
  return (pose.position() - target).norm() <= rho_d;
}

}  // namespace cotransport
