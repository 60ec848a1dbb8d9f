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

#include <optional>
#include <stdexcept>

#include "cotransport/robot.hpp"
#include "cotransport/types.hpp"

namespace cotransport {

// Line of sight undefined: the base sits exactly on its target.
class DegenerateLosError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Proportional-navigation tracker state for one base. prev_los is empty
// until the first command toward the current target has been issued.
struct PngState {
  std::optional<double> prev_los;
  double navigation_constant = 6.0;
  double v_cruise = 0.2;
};

struct PngCommand {
  VelocityCommand cmd;
  PngState state;
};

// Bearing from the base position to the target, wrapped.
double los_angle(const Pose2D& pose, const Point2D& target);

// One guidance step toward a stationary target.
//
// With a previous bearing: lambda_dot = wrap(lambda_k - lambda_{k-1}) / dt,
// normal acceleration a_n = N * lambda_dot * v, omega = a_n / v, at constant
// v = v_cruise. On a fresh target the heading is snapped toward the line of
// sight instead, rotating in place (v = 0) while the heading error exceeds
// pi/2. |omega| is always clamped to omega_max.
PngCommand png_step(const PngState& state, const Pose2D& pose,
                    const Point2D& target, double dt, double omega_max);

// rho_d = gamma * rho_l.
double reachability_radius(const RobotConfig& cfg);

// Closed ball test: planar distance <= rho_d.
bool reached(const Pose2D& pose, const Point2D& target, double rho_d);

}  // namespace cotransport
