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

#include "cotransport/sync.hpp"

#include "cotransport/diff_drive.hpp"
#include "cotransport/polyline.hpp"

namespace cotransport {

BaseController png_controller(const std::array<RobotConfig, 2>& cfgs) {
  return [cfgs](std::size_t robot, RobotRuntime& rt, const Point2D& target) {
    const auto out = png_step(rt.png, rt.pose, target, cfgs[robot].dt,
                              cfgs[robot].omega_max);
    rt.png = out.state;
    return out.cmd;
  };
}

SyncStepOutput sync_step(const SyncState& state,
                         const std::array<RobotRuntime, 2>& robots,
                         const std::array<Point2D, 2>& targets, double rho_d,
                         double dt, std::size_t n_d,
                         const BaseController& controller) {
  if (state.p > n_d) {
    throw TerminalStateError("sync_step: all targets already passed");
  }
  SyncStepOutput out;
  out.robots = robots;
  out.state = state;
  std::array<double, 2> dist{};
  for (std::size_t a = 0; a < 2; ++a) {
    auto& rt = out.robots[a];
    if (!state.stop[a]) {
      out.commands[a] = controller(a, rt, targets[a]);
      rt.pose = step_pose(rt.pose, out.commands[a], dt);
    } else {
      out.commands[a] = VelocityCommand{0.0, 0.0};
    }
    dist[a] = (targets[a] - rt.pose.position()).norm();
  }
  const bool in0 = dist[0] <= rho_d;
  const bool in1 = dist[1] <= rho_d;
  if (in0 && in1) {
    out.state.p = state.p + 1;
    out.state.stop = {false, false};
    for (auto& rt : out.robots) rt.png.prev_los.reset();
  } else if (in0) {
    out.state.stop[0] = true;
  } else if (in1) {
    out.state.stop[1] = true;
  }
  out.state.k = state.k + 1;
  return out;
}

Point3 candidate_ee_point(const Pose2D& base, const Trajectory3D& traj) {
  return nearest_on_trajectory(base.position(), traj);
}

LeaderFollowerOutput leader_follower_step(
    const std::array<RobotRuntime, 2>& robots,
    const std::array<Trajectory3D, 2>& trajectories,
    const std::array<RobotConfig, 2>& cfgs, double dt, double load_length,
    std::size_t leader, bool hold_leader, const IkOptions& options) {
  const std::size_t follower = 1 - leader;
  LeaderFollowerOutput out;
  for (std::size_t a = 0; a < 2; ++a) {
    out.candidates[a] = candidate_ee_point(robots[a].pose, trajectories[a]);
  }

  const auto& lead = robots[leader];
  const Point3 lead_target = world_to_arm_base(lead.pose, cfgs[leader], out.candidates[leader]);
  if (hold_leader) {
    IkResult held;
    held.beta_star = lead.joints.beta;
    held.residual = (forward_kinematics(cfgs[leader].arm, held.beta_star) - lead_target).norm();
    held.converged = true;
    out.ik[leader] = held;
  } else {
    out.ik[leader] = solve_ik_leader(cfgs[leader].arm, lead_target, lead.joints, dt, options);
  }
  out.ee_world[leader] = ee_world(lead.pose, cfgs[leader], out.ik[leader].beta_star);

  const auto& fol = robots[follower];
  const Point3 fol_target = world_to_arm_base(fol.pose, cfgs[follower], out.candidates[follower]);
  out.ik[follower] = solve_ik_follower(
      cfgs[follower].arm, fol_target, fol.joints, dt, out.ee_world[leader],
      arm_base_pose(fol.pose, cfgs[follower]), load_length, options);
  out.ee_world[follower] = ee_world(fol.pose, cfgs[follower], out.ik[follower].beta_star);
  return out;
}

}  // namespace cotransport
