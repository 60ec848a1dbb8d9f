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
#include <functional>
#include <stdexcept>

#include "cotransport/guidance.hpp"
#include "cotransport/ik.hpp"
#include "cotransport/robot.hpp"
#include "cotransport/types.hpp"

namespace cotransport {

// sync_step called after the last target was passed.
class TerminalStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Role { kLeader, kFollower };

struct RobotRuntime {
  Pose2D pose;
  JointState joints;
  PngState png;
  Role role = Role::kLeader;
};

// Shared target index p (1-based) and per-robot stop flags.
struct SyncState {
  std::size_t p = 1;
  std::array<bool, 2> stop{false, false};
  std::size_t k = 0;
};

// Base command source for a robot that is not stopped. May update the
// robot's tracker state (e.g. the PNG bearing memory).
using BaseController =
    std::function<VelocityCommand(std::size_t robot, RobotRuntime& runtime,
                                  const Point2D& target)>;

// PNG controller bound to the robots' limits.
BaseController png_controller(const std::array<RobotConfig, 2>& cfgs);

struct SyncStepOutput {
  std::array<VelocityCommand, 2> commands;
  std::array<RobotRuntime, 2> robots;
  SyncState state;
};

// One pass of the stop-and-sync loop. A stopped robot gets (0, 0) and keeps
// its pose; otherwise `controller` picks the command and the pose is advanced
// with the arc model. Distances to the current targets are then checked
// against rho_d: both inside advances p and clears both stops (and resets
// the trackers for the fresh targets); exactly one inside stops that robot.
// Throws TerminalStateError if p > n_d on entry.
SyncStepOutput sync_step(const SyncState& state,
                         const std::array<RobotRuntime, 2>& robots,
                         const std::array<Point2D, 2>& targets, double rho_d,
                         double dt, std::size_t n_d,
                         const BaseController& controller);

// Candidate end-effector target: projection of the base position onto the
// trajectory's XY polyline, lifted to 3D.
Point3 candidate_ee_point(const Pose2D& base, const Trajectory3D& traj);

struct LeaderFollowerOutput {
  std::array<IkResult, 2> ik;
  std::array<Point3, 2> ee_world;
  std::array<Point3, 2> candidates;
};

// Leader IK toward its candidate, leader end-effector from FK of the result,
// then the load-length constrained follower IK against it. When
// `hold_leader` is set the leader arm keeps its joints (its base is stopped);
// the follower always re-solves.
LeaderFollowerOutput leader_follower_step(
    const std::array<RobotRuntime, 2>& robots,
    const std::array<Trajectory3D, 2>& trajectories,
    const std::array<RobotConfig, 2>& cfgs, double dt, double load_length,
    std::size_t leader, bool hold_leader, const IkOptions& options = {});

}  // namespace cotransport
