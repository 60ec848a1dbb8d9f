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

#include "cotransport/ik.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Eigenvalues>

#include "cotransport/box_qp.hpp"

namespace cotransport {
namespace {

using ResidualVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;
using ResidualJac = Eigen::Matrix<double, Eigen::Dynamic, 4, 0, 4, 4>;
// Fills r, its Jacobian and, when `curvature` is non-null, sum_i r_i Hess(r_i).
using ResidualFn = std::function<void(const Vector4d&, ResidualVec&, ResidualJac&,
                                      Eigen::Matrix4d* curvature)>;

// Box plus the horizontal-gripper equality.
struct FeasibleSet {
  Vector4d lb;
  Vector4d ub;
  Vector4d a;
  double e = 0.0;
};

struct InnerResult {
  Vector4d beta;
  double cost = 0.0;
  bool converged = false;
  bool feasible = true;
  int iterations = 0;
};

std::optional<Vector4d> project(const FeasibleSet& set, const Vector4d& beta) {
  const auto d = solve_box_qp<4>(Eigen::Matrix4d::Identity(), Vector4d::Zero(),
                                 set.lb - beta, set.ub - beta, set.a,
                                 set.e - set.a.dot(beta));
  if (!d) return std::nullopt;
  return Vector4d(beta + *d);
}

double projected_gradient_norm(const FeasibleSet& set, const Vector4d& beta,
                               const Vector4d& grad) {
  const auto d = solve_box_qp<4>(Eigen::Matrix4d::Identity(), grad,
                                 set.lb - beta, set.ub - beta, set.a,
                                 set.e - set.a.dot(beta));
  return d ? d->norm() : std::numeric_limits<double>::infinity();
}

// Minimizes 1/2 ||r(beta)||^2 over the feasible set.
InnerResult minimize_least_squares(const ResidualFn& fn, const Vector4d& start,
                                   const FeasibleSet& set, int max_iterations,
                                   double tolerance) {
  InnerResult out;
  const auto projected = project(set, start);
  if (!projected) {
    out.beta = start;
    out.feasible = false;
    ResidualVec r;
    ResidualJac jac;
    fn(start, r, jac, nullptr);
    out.cost = 0.5 * r.squaredNorm();
    return out;
  }
  Vector4d beta = *projected;
  ResidualVec r;
  ResidualJac jac;
  Eigen::Matrix4d curvature;
  fn(beta, r, jac, &curvature);
  double cost = 0.5 * r.squaredNorm();
  double damping = 1e-10;

  int it = 0;
  for (; it < max_iterations; ++it) {
    const Vector4d grad = jac.transpose() * r;
    if (projected_gradient_norm(set, beta, grad) <= tolerance) {
      out.converged = true;
      break;
    }
    // Newton model with eigenvalues clipped to keep it convex.
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(jac.transpose() * jac +
                                                             curvature);
    const double scale = 1.0 + eig.eigenvalues().cwiseAbs().maxCoeff();
    const Vector4d clipped =
        eig.eigenvalues().cwiseMax(1e-9 * scale).array() + damping * scale;
    const Eigen::Matrix4d hess =
        eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    const auto step = solve_box_qp<4>(hess, grad, set.lb - beta, set.ub - beta,
                                      set.a, set.e - set.a.dot(beta));
    if (!step) break;
    const double slope = grad.dot(*step);
    if (!(slope < 0.0)) {
      damping *= 100.0;
      if (damping > 1e8) break;
      continue;
    }
    double alpha = 1.0;
    bool accepted = false;
    ResidualVec r_try;
    ResidualJac jac_try;
    Vector4d beta_try;
    for (int ls = 0; ls < 40; ++ls, alpha *= 0.5) {
      beta_try = beta + alpha * *step;
      fn(beta_try, r_try, jac_try, nullptr);
      const double cost_try = 0.5 * r_try.squaredNorm();
      if (cost_try <= cost + 1e-4 * alpha * slope) {
        accepted = true;
        cost = cost_try;
        break;
      }
    }
    if (!accepted) {
      damping *= 100.0;
      if (damping > 1e8) break;
      continue;
    }
    beta = beta_try;
    fn(beta, r, jac, &curvature);
    damping = std::max(damping * 0.1, 1e-12);
  }
  out.beta = beta;
  out.cost = cost;
  out.iterations = it;
  return out;
}

FeasibleSet feasible_set(const KinematicChain& chain, const JointState& prev,
                         double dt) {
  const JointLimits box = step_box(prev, dt);
  return {box.lo, box.hi, chain.horizontal_mask, chain.horizontal_sum};
}

Vector4d mid_range(const FeasibleSet& set) {
  const Vector4d mid = 0.5 * (set.lb + set.ub);
  return project(set, mid).value_or(mid);
}

ResidualFn tracking_residual(const KinematicChain& chain, const Point3& target) {
  return [&chain, target](const Vector4d& beta, ResidualVec& r, ResidualJac& jac,
                          Eigen::Matrix4d* curvature) {
    r = forward_kinematics(chain, beta) - target;
    jac = fk_jacobian(chain, beta);
    if (curvature != nullptr) {
      const auto hess = fk_hessian(chain, beta);
      *curvature = r[0] * hess[0] + r[1] * hess[1] + r[2] * hess[2];
    }
  };
}

// h(beta) = ||leader - FK(beta)|| - l and its gradient, leader given in the
// arm-base frame.
double load_violation(const KinematicChain& chain, const Vector4d& beta,
                      const Point3& leader, double l,
                      Eigen::Matrix<double, 1, 4>* grad,
                      Eigen::Matrix4d* hess = nullptr) {
  const Point3 ee = forward_kinematics(chain, beta);
  const Point3 diff = leader - ee;
  const double dist = diff.norm();
  if (grad != nullptr || hess != nullptr) {
    if (dist > 1e-12) {
      const Point3 u = diff / dist;
      const auto jac = fk_jacobian(chain, beta);
      if (grad != nullptr) *grad = -u.transpose() * jac;
      if (hess != nullptr) {
        const auto fh = fk_hessian(chain, beta);
        *hess = -(u[0] * fh[0] + u[1] * fh[1] + u[2] * fh[2]) +
                jac.transpose() * (Eigen::Matrix3d::Identity() - u * u.transpose()) * jac /
                    dist;
      }
    } else {
      if (grad != nullptr) grad->setZero();
      if (hess != nullptr) hess->setZero();
    }
  }
  return dist - l;
}

// Closed-form starts for a yaw-pitch-pitch-pitch chain whose links lie in the
// pitch plane: two yaw branches, each with two elbow branches when the
// gripper is held horizontal, or the stretched arm when the wrist is free.
std::vector<Vector4d> analytic_seeds(const KinematicChain& c, const Point3& target) {
  std::vector<Vector4d> seeds;
  bool planar = c.tool.y() == 0.0;
  for (int i = 1; i < 4; ++i) {
    planar = planar && c.origins[i].y() == 0.0 && c.axes[i] == Point3::UnitY();
  }
  const bool horizontal = c.horizontal_mask == Vector4d(0.0, 1.0, 1.0, 1.0);
  const bool free_wrist = c.horizontal_mask.isZero();
  if (!planar || !(horizontal || free_wrist)) return seeds;

  using C = std::complex<double>;
  const auto in_plane = [](const Point3& v) { return C(v.x(), v.z()); };
  const Point2D d = target.head<2>() - c.origins[0].head<2>();
  const double dn = d.norm();
  const double yaw0 = dn > 1e-12 ? std::atan2(d.y(), d.x()) : 0.0;
  const C shoulder(c.origins[1].x(), c.origins[0].z() + c.origins[1].z());
  const C l2 = in_plane(c.origins[2]);
  const C l3 = in_plane(c.origins[3]);
  const C tool = in_plane(c.tool);
  for (int branch = 0; branch < 2; ++branch) {
    const double yaw = wrap_angle(yaw0 + branch * kPi);
    const C rel = C(branch == 0 ? dn : -dn, target.z()) - shoulder;
    if (free_wrist) {
      const double th = std::arg(rel);
      const double p1 = std::arg(l2) - th;
      const double p2 = std::arg(l3) - th;
      const double p3 = std::arg(tool) - th;
      seeds.emplace_back(yaw, wrap_angle(p1), wrap_angle(p2 - p1), wrap_angle(p3 - p2));
      continue;
    }
    const double p3 = c.horizontal_sum;
    const C w = rel - tool * std::polar(1.0, -p3);
    const double a = std::abs(l2);
    const double b = std::abs(l3);
    const double cos_delta =
        std::clamp((std::norm(w) - a * a - b * b) / (2.0 * a * b), -1.0, 1.0);
    for (const double sign : {1.0, -1.0}) {
      const double delta = sign * std::acos(cos_delta);
      const double th_a = std::arg(w) - std::atan2(b * std::sin(delta), a + b * std::cos(delta));
      const double b1 = wrap_angle(std::arg(l2) - th_a);
      const double b2 = wrap_angle(std::arg(l3) - th_a - delta - b1);
      seeds.emplace_back(yaw, b1, b2, p3 - b1 - b2);
    }
  }
  return seeds;
}

// Converged beats unconverged; then the smaller residual.
bool better(const IkResult& a, const IkResult& b) {
  if (a.converged != b.converged) return a.converged;
  return a.residual < b.residual;
}

IkResult finalize_leader(const KinematicChain& chain, const Point3& target,
                         const InnerResult& inner) {
  IkResult res;
  res.beta_star = inner.beta;
  res.residual = (forward_kinematics(chain, inner.beta) - target).norm();
  res.constraint_violation = 0.0;
  res.converged = inner.converged && inner.feasible;
  res.iterations = inner.iterations;
  return res;
}

struct FollowerAttempt {
  Vector4d beta;
  bool converged = false;
  int iterations = 0;
  double violation = 0.0;
};

FollowerAttempt augmented_lagrangian(const KinematicChain& chain,
                                     const Point3& target, const Point3& leader,
                                     double l, const Vector4d& start,
                                     const FeasibleSet& set,
                                     const IkOptions& options) {
  constexpr int kOuterIterations = 25;
  constexpr double kTightViolation = 1e-9;
  double lambda = 0.0;
  double mu = 10.0;
  Vector4d beta = start;
  FollowerAttempt out;
  double prev_violation = std::numeric_limits<double>::infinity();
  bool inner_ok = false;

  for (int outer = 0; outer < kOuterIterations; ++outer) {
    const ResidualFn fn = [&](const Vector4d& b, ResidualVec& r, ResidualJac& jac,
                              Eigen::Matrix4d* curvature) {
      Eigen::Matrix<double, 1, 4> dh;
      Eigen::Matrix4d hh;
      const double h = load_violation(chain, b, leader, l, &dh,
                                      curvature != nullptr ? &hh : nullptr);
      const double s = std::sqrt(mu);
      r.resize(4);
      jac.resize(4, 4);
      r.head<3>() = forward_kinematics(chain, b) - target;
      jac.topRows<3>() = fk_jacobian(chain, b);
      r[3] = s * (h + lambda / mu);
      jac.row(3) = s * dh;
      if (curvature != nullptr) {
        const auto fh = fk_hessian(chain, b);
        *curvature = r[0] * fh[0] + r[1] * fh[1] + r[2] * fh[2] + r[3] * s * hh;
      }
    };
    const InnerResult inner =
        minimize_least_squares(fn, beta, set, options.max_iterations, options.tolerance);
    out.iterations += inner.iterations;
    if (!inner.feasible) break;
    beta = inner.beta;
    inner_ok = inner.converged;
    const double h = load_violation(chain, beta, leader, l, nullptr);
    if (std::abs(h) <= kTightViolation && inner_ok) break;
    lambda += mu * h;
    if (std::abs(h) > 0.25 * prev_violation) mu = std::min(mu * 10.0, 1e12);
    prev_violation = std::abs(h);
  }
  out.beta = beta;
  out.violation = std::abs(load_violation(chain, beta, leader, l, nullptr));
  out.converged = inner_ok && out.violation <= options.load_tolerance;
  return out;
}

}  // namespace

JointLimits step_box(const JointState& prev, double dt) {
  JointLimits box = prev.limits;
  const Vector4d band = prev.limits.rate * dt;
  box.lo = prev.limits.lo.cwiseMax(prev.beta - band);
  box.hi = prev.limits.hi.cwiseMin(prev.beta + band);
  return box;
}

IkResult solve_ik_leader(const KinematicChain& chain, const Point3& target_in_base,
                         const JointState& prev, double dt,
                         const IkOptions& options) {
  const FeasibleSet set = feasible_set(chain, prev, dt);
  const ResidualFn fn = tracking_residual(chain, target_in_base);
  int iterations = 0;
  const auto attempt = [&](const Vector4d& start) {
    const InnerResult inner =
        minimize_least_squares(fn, start, set, options.max_iterations, options.tolerance);
    iterations += inner.iterations;
    return finalize_leader(chain, target_in_base, inner);
  };
  IkResult res = attempt(prev.beta);
  if (!res.converged && options.retry_mid_range) {
    const IkResult second = attempt(mid_range(set));
    if (better(second, res)) res = second;
  }
  // A residual left over may be a local minimum; try the closed-form starts.
  if (res.residual > options.tolerance && options.retry_mid_range) {
    for (const Vector4d& seed : analytic_seeds(chain, target_in_base)) {
      const IkResult other = attempt(seed);
      if (better(other, res)) res = other;
    }
  }
  res.iterations = iterations;
  return res;
}

IkResult solve_ik_follower(const KinematicChain& chain,
                           const Point3& target_in_base, const JointState& prev,
                           double dt, const Point3& leader_ee_world,
                           const Pose2D& own_arm_base, double load_length,
                           const IkOptions& options) {
  if (!(load_length > 0.0)) {
    throw std::invalid_argument("solve_ik_follower: load length must be > 0");
  }
  // The equality is invariant under the rigid base transform, so it is
  // evaluated in the follower's arm-base frame.
  const Point2D leader_xy = own_arm_base.inverse_transform(leader_ee_world.head<2>());
  const Point3 leader(leader_xy.x(), leader_xy.y(), leader_ee_world.z());
  const FeasibleSet set = feasible_set(chain, prev, dt);

  FollowerAttempt best = augmented_lagrangian(chain, target_in_base, leader,
                                              load_length, prev.beta, set, options);
  int iterations = best.iterations;
  if (!best.converged && options.retry_mid_range) {
    const FollowerAttempt retry = augmented_lagrangian(
        chain, target_in_base, leader, load_length, mid_range(set), set, options);
    iterations += retry.iterations;
    if (retry.converged || retry.violation < best.violation) best = retry;
  }

  if (!best.converged) {
    // Infeasible or stuck: fall back to the iterate closest to the sphere.
    const ResidualFn feas = [&](const Vector4d& b, ResidualVec& r, ResidualJac& jac,
                                Eigen::Matrix4d* curvature) {
      Eigen::Matrix<double, 1, 4> dh;
      Eigen::Matrix4d hh;
      r.resize(1);
      jac.resize(1, 4);
      r[0] = load_violation(chain, b, leader, load_length, &dh,
                            curvature != nullptr ? &hh : nullptr);
      jac.row(0) = dh;
      if (curvature != nullptr) *curvature = r[0] * hh;
    };
    const InnerResult restore = minimize_least_squares(
        feas, best.beta, set, options.max_iterations, options.tolerance * 1e-3);
    iterations += restore.iterations;
    const double v = std::abs(load_violation(chain, restore.beta, leader, load_length, nullptr));
    if (restore.feasible && v < best.violation) {
      best.beta = restore.beta;
      best.violation = v;
    }
  }

  IkResult res;
  res.beta_star = best.beta;
  res.residual = (forward_kinematics(chain, best.beta) - target_in_base).norm();
  res.constraint_violation = best.violation;
  res.converged = best.converged;
  res.iterations = iterations;
  return res;
}

}  // namespace cotransport
