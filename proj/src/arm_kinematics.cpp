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

#include "cotransport/arm_kinematics.hpp"

#include <stdexcept>

namespace cotransport {

double KinematicChain::reach() const {
  return origins[2].norm() + origins[3].norm() + tool.norm();
}

KinematicChain open_manipulator_x() {
  KinematicChain c;
  c.origins = {Point3(0.012, 0.0, 0.017), Point3(0.0, 0.0, 0.0595),
               Point3(0.024, 0.0, 0.128), Point3(0.124, 0.0, 0.0)};
  c.axes = {Point3::UnitZ(), Point3::UnitY(), Point3::UnitY(), Point3::UnitY()};
  c.tool = Point3(0.126, 0.0, 0.0);
  c.limits.lo = Vector4d(-0.9, -0.57, -0.3, -0.5) * kPi;
  c.limits.hi = Vector4d(0.9, 0.5, 0.44, 0.65) * kPi;
  c.limits.rate = Vector4d::Constant(4.0);
  c.horizontal_mask = Vector4d(0.0, 1.0, 1.0, 1.0);
  c.horizontal_sum = 0.0;
  return c;
}

void validate_chain(const KinematicChain& chain) {
  if ((chain.axes[0] - Point3::UnitZ()).norm() > 1e-9) {
    throw std::invalid_argument("chain: first joint axis must be vertical");
  }
  for (int i = 1; i < 4; ++i) {
    if (std::abs(chain.axes[i].z()) > 1e-9 ||
        std::abs(chain.axes[i].norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("chain: pitch joint axes must be horizontal unit vectors");
    }
  }
  if (!(chain.origins[1].norm() > 0.0 && chain.origins[2].norm() > 0.0 &&
        chain.origins[3].norm() > 0.0 && chain.tool.norm() > 0.0)) {
    throw std::invalid_argument("chain: link lengths must be > 0");
  }
  const auto& lim = chain.limits;
  if (!(lim.lo.array() <= lim.hi.array()).all()) {
    throw std::invalid_argument("chain: joint lower limit above upper limit");
  }
  if (!(lim.rate.array() > 0.0).all()) {
    throw std::invalid_argument("chain: rate limits must be > 0");
  }
}

namespace {

struct ChainFrames {
  std::array<Point3, 4> joint_pos;
  std::array<Point3, 4> joint_axis;
  Point3 ee;
};

ChainFrames chain_frames(const KinematicChain& chain, const Vector4d& beta) {
  ChainFrames f;
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();
  Point3 pos = Point3::Zero();
  for (int i = 0; i < 4; ++i) {
    pos += rot * chain.origins[i];
    f.joint_pos[i] = pos;
    f.joint_axis[i] = rot * chain.axes[i];
    rot = rot * Eigen::AngleAxisd(beta[i], chain.axes[i]).toRotationMatrix();
  }
  f.ee = pos + rot * chain.tool;
  return f;
}

}  // namespace

Eigen::Matrix<double, 3, 4> fk_jacobian(const KinematicChain& chain,
                                        const Vector4d& beta) {
  const ChainFrames f = chain_frames(chain, beta);
  Eigen::Matrix<double, 3, 4> jac;
  for (int i = 0; i < 4; ++i) {
    jac.col(i) = f.joint_axis[i].cross(f.ee - f.joint_pos[i]);
  }
  return jac;
}

std::array<Eigen::Matrix4d, 3> fk_hessian(const KinematicChain& chain,
                                          const Vector4d& beta) {
  const ChainFrames f = chain_frames(chain, beta);
  std::array<Eigen::Matrix4d, 3> h;
  for (int j = 0; j < 4; ++j) {
    for (int k = j; k < 4; ++k) {
      // d/dbeta_k of column j, k >= j: a_j x (a_k x (ee - o_k)).
      const Point3 d = f.joint_axis[j].cross(f.joint_axis[k].cross(f.ee - f.joint_pos[k]));
      for (int i = 0; i < 3; ++i) {
        h[i](j, k) = d[i];
        h[i](k, j) = d[i];
      }
    }
  }
  return h;
}

}  // namespace cotransport
