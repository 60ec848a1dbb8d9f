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

#include "cotransport/slq_mpc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace cotransport {

double relaxed_barrier(double z, double delta, double weight) {
  if (z > delta) return -weight * std::log(z);
  const double s = (z - 2.0 * delta) / delta;
  return weight * (0.5 * (s * s - 1.0) - std::log(delta));
}

double relaxed_barrier_derivative(double z, double delta, double weight) {
  if (z > delta) return -weight / z;
  return weight * (z - 2.0 * delta) / (delta * delta);
}

double relaxed_barrier_second_derivative(double z, double delta, double weight) {
  if (z > delta) return weight / (z * z);
  return weight / (delta * delta);
}

void validate_problem(const MpcProblem& problem) {
  if (problem.horizon < 2) throw std::invalid_argument("mpc: horizon must be >= 2");
  if (!(problem.q_diag.array() > 0.0).all() || !(problem.r_diag.array() > 0.0).all()) {
    throw std::invalid_argument("mpc: weights must be positive");
  }
  if (!(problem.barrier_delta > 0.0 && problem.barrier_delta < 1.0)) {
    throw std::invalid_argument("mpc: barrier delta must be in (0, 1)");
  }
  if (!(problem.barrier_weight > 0.0)) {
    throw std::invalid_argument("mpc: barrier weight must be positive");
  }
  if (!(problem.dt > 0.0)) throw std::invalid_argument("mpc: dt must be > 0");
  if (static_cast<int>(problem.reference.size()) < problem.horizon) {
    throw std::invalid_argument("mpc: reference shorter than the horizon");
  }
}

MpcState mpc_dynamics(const MpcState& x, const MpcInput& u, double dt) {
  MpcState next = x;
  next[0] += dt * u[0] * std::cos(x[2]);
  next[1] += dt * u[0] * std::sin(x[2]);
  next[2] = wrap_angle(x[2] + dt * u[1]);
  next.tail<4>() += dt * u.tail<4>();
  return next;
}

void mpc_dynamics_jacobians(const MpcState& x, const MpcInput& u, double dt,
                            MpcStateMatrix* a, MpcInputMatrix* b) {
  const double c = std::cos(x[2]);
  const double s = std::sin(x[2]);
  if (a != nullptr) {
    a->setIdentity();
    (*a)(0, 2) = -dt * u[0] * s;
    (*a)(1, 2) = dt * u[0] * c;
  }
  if (b != nullptr) {
    b->setZero();
    (*b)(0, 0) = dt * c;
    (*b)(1, 0) = dt * s;
    (*b)(2, 1) = dt;
    b->bottomRightCorner<4, 4>() = dt * Eigen::Matrix4d::Identity();
  }
}

Point3 mpc_end_effector(const MpcState& x, const RobotConfig& robot,
                        Eigen::Matrix<double, 3, kMpcStateDim>* jac) {
  const Vector4d beta = x.tail<4>();
  const Point3 local = forward_kinematics(robot.arm, beta);
  const Point2D w = robot.mount_offset + local.head<2>();
  const double c = std::cos(x[2]);
  const double s = std::sin(x[2]);
  const Point3 ee(x[0] + c * w.x() - s * w.y(), x[1] + s * w.x() + c * w.y(), local.z());
  if (jac != nullptr) {
    const auto fk_jac = fk_jacobian(robot.arm, beta);
    Eigen::Matrix2d rot;
    rot << c, -s, s, c;
    jac->setZero();
    (*jac)(0, 0) = 1.0;
    (*jac)(1, 1) = 1.0;
    (*jac)(0, 2) = -s * w.x() - c * w.y();
    (*jac)(1, 2) = c * w.x() - s * w.y();
    jac->block<2, 4>(0, 3) = rot * fk_jac.topRows<2>();
    jac->block<1, 4>(2, 3) = fk_jac.row(2);
  }
  return ee;
}

MpcState make_mpc_state(const Pose2D& pose, const Vector4d& beta) {
  MpcState x;
  x << pose.x, pose.y, pose.theta, beta;
  return x;
}

namespace {

MpcInput input_limits(const RobotConfig& robot) {
  MpcInput lim;
  lim << robot.v_max, robot.omega_max, robot.arm.limits.rate;
  return lim;
}

// Two-sided relaxed barrier on lo <= value <= hi with slack normalised by the
// half width, so the cost vanishes at the centre.
struct BarrierTerm {
  double value = 0.0;
  double grad = 0.0;
  double hess = 0.0;
};

BarrierTerm two_sided(double value, double lo, double hi, double delta, double w) {
  const double half = 0.5 * (hi - lo);
  const double z_hi = (hi - value) / half;
  const double z_lo = (value - lo) / half;
  BarrierTerm t;
  t.value = relaxed_barrier(z_hi, delta, w) + relaxed_barrier(z_lo, delta, w);
  t.grad = (-relaxed_barrier_derivative(z_hi, delta, w) +
            relaxed_barrier_derivative(z_lo, delta, w)) / half;
  t.hess = (relaxed_barrier_second_derivative(z_hi, delta, w) +
            relaxed_barrier_second_derivative(z_lo, delta, w)) / (half * half);
  return t;
}

struct InputCost {
  double value = 0.0;
  MpcInput grad = MpcInput::Zero();
  Eigen::Matrix<double, kMpcInputDim, kMpcInputDim> hess =
      Eigen::Matrix<double, kMpcInputDim, kMpcInputDim>::Zero();
};

InputCost input_cost(const MpcProblem& pb, const MpcInput& u) {
  InputCost c;
  const MpcInput lim = input_limits(pb.robot);
  for (int i = 0; i < kMpcInputDim; ++i) {
    const auto b = two_sided(u[i], -lim[i], lim[i], pb.barrier_delta, pb.barrier_weight);
    c.value += pb.r_diag[i] * u[i] * u[i] + b.value;
    c.grad[i] = 2.0 * pb.r_diag[i] * u[i] + b.grad;
    c.hess(i, i) = 2.0 * pb.r_diag[i] + b.hess;
  }
  return c;
}

struct StateCost {
  double value = 0.0;
  MpcState grad = MpcState::Zero();
  MpcStateMatrix hess = MpcStateMatrix::Zero();  // Gauss-Newton
};

StateCost state_cost(const MpcProblem& pb, const MpcState& x, const Point3& ref) {
  StateCost c;
  Eigen::Matrix<double, 3, kMpcStateDim> jac;
  const Point3 err = mpc_end_effector(x, pb.robot, &jac) - ref;
  const Eigen::Matrix3d q = pb.q_diag.asDiagonal();
  c.value = err.dot(q * err);
  c.grad = 2.0 * jac.transpose() * q * err;
  c.hess = 2.0 * jac.transpose() * q * jac;
  const auto& lim = pb.robot.arm.limits;
  for (int i = 0; i < 4; ++i) {
    const auto b = two_sided(x[3 + i], lim.lo[i], lim.hi[i], pb.barrier_delta,
                             pb.barrier_weight);
    c.value += b.value;
    c.grad[3 + i] += b.grad;
    c.hess(3 + i, 3 + i) += b.hess;
  }
  return c;
}

double cost_of(const MpcProblem& pb, const std::vector<MpcState>& xs,
               const std::vector<MpcInput>& us) {
  double j = 0.0;
  for (int t = 0; t < pb.horizon; ++t) {
    j += input_cost(pb, us[t]).value;
    j += state_cost(pb, xs[t + 1], pb.reference[t]).value;
  }
  return j;
}

MpcState state_difference(const MpcState& a, const MpcState& b) {
  MpcState d = a - b;
  d[2] = wrap_angle(d[2]);
  return d;
}

}  // namespace

std::vector<MpcState> mpc_rollout(const MpcProblem& problem, const MpcState& x0,
                                  const std::vector<MpcInput>& inputs) {
  std::vector<MpcState> xs(problem.horizon + 1);
  xs[0] = x0;
  for (int t = 0; t < problem.horizon; ++t) {
    xs[t + 1] = mpc_dynamics(xs[t], inputs[t], problem.dt);
  }
  return xs;
}

double mpc_total_cost(const MpcProblem& problem, const MpcState& x0,
                      const std::vector<MpcInput>& inputs) {
  return cost_of(problem, mpc_rollout(problem, x0, inputs), inputs);
}

std::vector<MpcInput> mpc_cost_gradient(const MpcProblem& problem,
                                        const MpcState& x0,
                                        const std::vector<MpcInput>& inputs) {
  const auto xs = mpc_rollout(problem, x0, inputs);
  std::vector<MpcInput> grad(problem.horizon);
  MpcState adjoint = MpcState::Zero();
  for (int t = problem.horizon - 1; t >= 0; --t) {
    adjoint += state_cost(problem, xs[t + 1], problem.reference[t]).grad;
    MpcStateMatrix a;
    MpcInputMatrix b;
    mpc_dynamics_jacobians(xs[t], inputs[t], problem.dt, &a, &b);
    grad[t] = input_cost(problem, inputs[t]).grad + b.transpose() * adjoint;
    adjoint = a.transpose() * adjoint;
  }
  return grad;
}

SlqResult slq_solve(const MpcProblem& problem, const MpcState& x0,
                    const std::vector<MpcInput>& initial_inputs) {
  validate_problem(problem);
  const int n = problem.horizon;
  SlqResult res;
  res.inputs = initial_inputs;
  res.inputs.resize(n, MpcInput::Zero());
  res.states = mpc_rollout(problem, x0, res.inputs);
  double cost = cost_of(problem, res.states, res.inputs);
  res.cost_history.push_back(cost);

  using InputSquare = Eigen::Matrix<double, kMpcInputDim, kMpcInputDim>;
  using Gain = Eigen::Matrix<double, kMpcInputDim, kMpcStateDim>;
  std::vector<MpcInput> k_ff(n);
  std::vector<Gain> k_fb(n);
  std::vector<MpcStateMatrix> a(n);
  std::vector<MpcInputMatrix> b(n);
  std::vector<InputCost> lu(n);
  std::vector<StateCost> lx(n);  // cost of states[t + 1]
  double mu = 1e-6;

  for (int iter = 0; iter < problem.max_iterations; ++iter) {
    res.iterations = iter + 1;
    for (int t = 0; t < n; ++t) {
      mpc_dynamics_jacobians(res.states[t], res.inputs[t], problem.dt, &a[t], &b[t]);
      lu[t] = input_cost(problem, res.inputs[t]);
      lx[t] = state_cost(problem, res.states[t + 1], problem.reference[t]);
    }

    // Backward pass, retried with more regularisation if Quu is indefinite.
    double expected = 0.0;
    bool backward_ok = false;
    while (!backward_ok) {
      MpcState vx = MpcState::Zero();
      MpcStateMatrix vxx = MpcStateMatrix::Zero();
      expected = 0.0;
      backward_ok = true;
      for (int t = n - 1; t >= 0; --t) {
        vx += lx[t].grad;
        vxx += lx[t].hess;
        const MpcState qx = a[t].transpose() * vx;
        const MpcInput qu = lu[t].grad + b[t].transpose() * vx;
        const MpcStateMatrix qxx = a[t].transpose() * vxx * a[t];
        const InputSquare quu = lu[t].hess + b[t].transpose() * vxx * b[t] +
                                mu * InputSquare::Identity();
        const Gain qux = b[t].transpose() * vxx * a[t];
        Eigen::LLT<InputSquare> llt(quu);
        if (llt.info() != Eigen::Success) {
          backward_ok = false;
          break;
        }
        k_ff[t] = -llt.solve(qu);
        k_fb[t] = -llt.solve(qux);
        expected += k_ff[t].dot(qu) + 0.5 * k_ff[t].dot(quu * k_ff[t]);
        vx = qx + k_fb[t].transpose() * quu * k_ff[t] + k_fb[t].transpose() * qu +
             qux.transpose() * k_ff[t];
        vxx = qxx + k_fb[t].transpose() * quu * k_fb[t] +
              k_fb[t].transpose() * qux + qux.transpose() * k_fb[t];
        vxx = 0.5 * (vxx + vxx.transpose()).eval();
      }
      if (!backward_ok) {
        mu *= 10.0;
        if (mu > 1e10) break;
      }
    }
    if (!backward_ok) {
      res.line_search_failed = true;
      break;
    }
    if (-expected < problem.cost_tolerance) {
      res.converged = true;
      break;
    }

    bool accepted = false;
    double alpha = 1.0;
    for (int ls = 0; ls < 12; ++ls, alpha *= 0.5) {
      std::vector<MpcInput> us(n);
      std::vector<MpcState> xs(n + 1);
      xs[0] = x0;
      for (int t = 0; t < n; ++t) {
        us[t] = res.inputs[t] + alpha * k_ff[t] +
                k_fb[t] * state_difference(xs[t], res.states[t]);
        xs[t + 1] = mpc_dynamics(xs[t], us[t], problem.dt);
      }
      const double new_cost = cost_of(problem, xs, us);
      if (new_cost < cost) {
        const double decrease = cost - new_cost;
        res.inputs = std::move(us);
        res.states = std::move(xs);
        cost = new_cost;
        res.cost_history.push_back(cost);
        accepted = true;
        if (decrease < problem.cost_tolerance) res.converged = true;
        break;
      }
    }
    if (res.converged) break;
    if (accepted) {
      mu = std::max(mu * 0.3, 1e-9);
    } else {
      mu *= 10.0;
      if (mu > 1e10) {
        res.line_search_failed = true;
        break;
      }
    }
  }
  return res;
}

MpcController::MpcController(MpcProblem problem) : problem_(std::move(problem)) {}

MpcInput MpcController::step(const MpcState& x0, const std::vector<Point3>& reference) {
  problem_.reference = reference;
  last_ = slq_solve(problem_, x0, warm_start_);
  warm_start_.assign(last_.inputs.begin() + 1, last_.inputs.end());
  warm_start_.push_back(last_.inputs.back());
  return last_.inputs.front();
}

}  // namespace cotransport
