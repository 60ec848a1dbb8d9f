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

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace cotransport {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

using Point2D = Vector2<double>;
using Point3 = Vector3<double>;
using Vector4d = Vector4<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps any finite angle into [-pi, pi). Throws std::invalid_argument on
// non-finite input.
double wrap_angle(double a);

// Planar pose of a mobile platform. The heading is kept wrapped to [-pi, pi).
template <typename Scalar>
struct Pose2 {
  Scalar x{0};
  Scalar y{0};
  Scalar theta{0};

  Vector2<Scalar> position() const { return {x, y}; }

  // Maps a point expressed in this pose's frame into the parent frame.
  Vector2<Scalar> transform(const Vector2<Scalar>& local) const {
    using std::cos;
    using std::sin;
    const Scalar c = cos(theta);
    const Scalar s = sin(theta);
    return {x + c * local.x() - s * local.y(), y + s * local.x() + c * local.y()};
  }

  // Inverse of transform().
  Vector2<Scalar> inverse_transform(const Vector2<Scalar>& world) const {
    using std::cos;
    using std::sin;
    const Scalar c = cos(theta);
    const Scalar s = sin(theta);
    const Scalar dx = world.x() - x;
    const Scalar dy = world.y() - y;
    return {c * dx + s * dy, -s * dx + c * dy};
  }
};

using Pose2D = Pose2<double>;

// Builds a pose with the heading wrapped.
Pose2D make_pose(double x, double y, double theta);

struct VelocityCommand {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s

  bool operator==(const VelocityCommand&) const = default;
};

// Ordered desired end-effector waypoints. Consecutive waypoints are distinct.
class Trajectory3D {
 public:
  Trajectory3D() = default;
  explicit Trajectory3D(std::vector<Point3> waypoints);

  const std::vector<Point3>& waypoints() const { return waypoints_; }
  std::size_t size() const { return waypoints_.size(); }
  const Point3& operator[](std::size_t i) const { return waypoints_[i]; }

  // XY projection of the waypoints.
  std::vector<Point2D> projection() const;

  // Sum of 3D segment lengths.
  double arc_length() const;

 private:
  std::vector<Point3> waypoints_;
};

}  // namespace cotransport
