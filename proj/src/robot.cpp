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

#include "cotransport/robot.hpp"

#include <stdexcept>

namespace cotransport {

void validate_config(const RobotConfig& cfg) {
  if (!(cfg.v_max > 0.0)) throw std::invalid_argument("config: v_max must be > 0");
  if (!(cfg.omega_max > 0.0)) throw std::invalid_argument("config: omega_max must be > 0");
  if (!(cfg.rho_l > 0.0)) throw std::invalid_argument("config: rho_l must be > 0");
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) {
    throw std::invalid_argument("config: gamma must be in (0, 1]");
  }
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
  if (!cfg.mount_offset.allFinite()) {
    throw std::invalid_argument("config: mount offset must be finite");
  }
  validate_chain(cfg.arm);
}

Pose2D arm_base_pose(const Pose2D& platform, const RobotConfig& cfg) {
  const Point2D p = platform.transform(cfg.mount_offset);
  return Pose2D{p.x(), p.y(), platform.theta};
}

Point3 ee_world(const Pose2D& platform, const RobotConfig& cfg, const Vector4d& beta) {
  const Point3 local = forward_kinematics(cfg.arm, beta);
  const Point2D xy = arm_base_pose(platform, cfg).transform(local.head<2>());
  return {xy.x(), xy.y(), local.z()};
}

Point3 world_to_arm_base(const Pose2D& platform, const RobotConfig& cfg,
                         const Point3& world) {
  const Point2D xy = arm_base_pose(platform, cfg).inverse_transform(world.head<2>());
  return {xy.x(), xy.y(), world.z()};
}

}  // namespace cotransport
