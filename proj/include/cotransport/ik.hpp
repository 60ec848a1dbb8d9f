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

namespace cotransport {

struct JointState {
  Vector4d beta = Vector4d::Zero();
  JointLimits limits;
};

struct IkOptions {
  int max_iterations = 200;
  // First-order optimality: norm of the projected gradient step.
  double tolerance = 1e-8;
  // Acceptance band on the follower's load-length equality, meters.
  double load_tolerance = 1e-4;
  // Restart once from the middle of the feasible box on failure.
  bool retry_mid_range = true;
};

struct IkResult {
  Vector4d beta_star = Vector4d::Zero();
  double residual = 0.0;              // ||FK(beta*) - target||
  double constraint_violation = 0.0;  // | ||r_L - FK_w(beta*)|| - l |, 0 for the leader
  bool converged = false;
  int iterations = 0;
};

// Joint box for one control step: the angle limits intersected with the
// reachable band prev +/- rate * dt.
JointLimits step_box(const JointState& prev, double dt);

// Position IK with joint box, per-step rate box and the horizontal-gripper
// equality, warm-started at prev.beta. Sequential QP on the Gauss-Newton
// model with an Armijo line search. Never throws on solver failure; the best
// iterate is returned with converged = false.
IkResult solve_ik_leader(const KinematicChain& chain, const Point3& target_in_base,
                         const JointState& prev, double dt,
                         const IkOptions& options = {});

// Follower IK: tracks target_in_base while keeping its world end-effector at
// distance `load_length` from `leader_ee_world`. `own_arm_base` is the
// world pose of this arm's base. The equality is handled by an augmented
// Lagrangian around the same SQP inner solver. If it cannot be met within
// options.load_tolerance the minimal-violation iterate is returned with
// converged = false.
IkResult solve_ik_follower(const KinematicChain& chain,
                           const Point3& target_in_base, const JointState& prev,
                           double dt, const Point3& leader_ee_world,
                           const Pose2D& own_arm_base, double load_length,
                           const IkOptions& options = {});

}  // namespace cotransport
