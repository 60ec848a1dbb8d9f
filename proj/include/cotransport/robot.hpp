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

#include "cotransport/arm_kinematics.hpp"
#include "cotransport/types.hpp"

namespace cotransport {

// One mobile manipulator: platform limits, arm geometry and timing.
// Defaults follow the TurtleBot3 Waffle Pi datasheet (0.26 m/s, 1.82 rad/s)
// with the OpenMANIPULATOR-X mounted 0.092 m behind the platform centre.
struct RobotConfig {
  double v_max = 0.26;
  double omega_max = 1.82;
  KinematicChain arm = open_manipulator_x();
  double rho_l = open_manipulator_x().reach();  // arm reach, meters
  double gamma = 0.4;
  double dt = 0.08;
  Point2D mount_offset{-0.092, 0.0};
};

// Throws std::invalid_argument when a limit or timing field is out of range.
void validate_config(const RobotConfig& cfg);

// World pose of the arm base: platform pose composed with the mount offset.
Pose2D arm_base_pose(const Pose2D& platform, const RobotConfig& cfg);

// End-effector in the world frame.
Point3 ee_world(const Pose2D& platform, const RobotConfig& cfg, const Vector4d& beta);

// World point expressed in the arm-base frame of a platform.
Point3 world_to_arm_base(const Pose2D& platform, const RobotConfig& cfg,
                         const Point3& world);

}  // namespace cotransport
