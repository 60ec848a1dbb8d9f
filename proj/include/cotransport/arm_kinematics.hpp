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

#include <Eigen/Geometry>

#include "cotransport/types.hpp"

namespace cotransport {

struct JointLimits {
  Vector4d lo;
  Vector4d hi;
  Vector4d rate;  // rad/s, symmetric
};

// Yaw-pitch-pitch-pitch serial arm. Joint i sits at origins[i] expressed in
// the frame of joint i - 1 (joint 0 in the arm-base frame) and rotates about
// axes[i]; the end-effector sits at `tool` in the last joint frame.
//
// The gripper is kept parallel to the ground by the linear equality
// horizontal_mask . beta == horizontal_sum.
struct KinematicChain {
  std::array<Point3, 4> origins;
  std::array<Point3, 4> axes;
  Point3 tool;
  JointLimits limits;
  Vector4d horizontal_mask;
  double horizontal_sum = 0.0;

  // Maximum reach of the pitch sub-chain: sum of the link lengths after the
  // first pitch joint.
  double reach() const;
};

// OpenMANIPULATOR-X link geometry with the joint limits used on the TurtleBot3
// Waffle Pi (angle box [-0.9pi, -0.57pi, -0.3pi, -0.5pi] .. [0.9pi, 0.5pi,
// 0.44pi, 0.65pi], 4 rad/s per joint).
KinematicChain open_manipulator_x();

// Throws std::invalid_argument when the chain is not yaw-pitch-pitch-pitch or
// has a non-positive link length or an inverted limit box.
void validate_chain(const KinematicChain& chain);

// End-effector position in the arm-base frame.
template <typename Scalar>
Vector3<Scalar> forward_kinematics(const KinematicChain& chain,
                                   const Vector4<Scalar>& beta) {
  using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
  Mat3 rot = Mat3::Identity();
  Vector3<Scalar> pos = Vector3<Scalar>::Zero();
  for (int i = 0; i < 4; ++i) {
    pos += rot * chain.origins[i].template cast<Scalar>();
    rot = rot * Eigen::AngleAxis<Scalar>(
                    beta[i], chain.axes[i].template cast<Scalar>())
                    .toRotationMatrix();
  }
  return pos + rot * chain.tool.template cast<Scalar>();
}

// Analytic position Jacobian d(FK)/d(beta).
Eigen::Matrix<double, 3, 4> fk_jacobian(const KinematicChain& chain,
                                        const Vector4d& beta);

// Second derivatives: element i is the Hessian of FK coordinate i.
std::array<Eigen::Matrix4d, 3> fk_hessian(const KinematicChain& chain,
                                          const Vector4d& beta);

}  // namespace cotransport
