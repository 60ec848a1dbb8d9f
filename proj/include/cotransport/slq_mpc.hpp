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

#include <vector>

#include <Eigen/Core>

#include "cotransport/arm_kinematics.hpp"
#include "cotransport/robot.hpp"
#include "cotransport/types.hpp"

namespace cotransport {

inline constexpr int kMpcStateDim = 7;  // x, y, theta, beta(4)
inline constexpr int kMpcInputDim = 6;  // v, omega, beta_dot(4)

using MpcState = Eigen::Matrix<double, kMpcStateDim, 1>;
using MpcInput = Eigen::Matrix<double, kMpcInputDim, 1>;
using MpcStateMatrix = Eigen::Matrix<double, kMpcStateDim, kMpcStateDim>;
using MpcInputMatrix = Eigen::Matrix<double, kMpcStateDim, kMpcInputDim>;

// Relaxed logarithmic barrier: -w ln z above delta, continued below delta by
// the quadratic that matches value and slope at z = delta, so it is finite
// and C1 on the whole line.
double relaxed_barrier(double z, double delta, double weight);
double relaxed_barrier_derivative(double z, double delta, double weight);
double relaxed_barrier_second_derivative(double z, double delta, double weight);

// Per-robot tracking problem over a horizon of N steps.
//
//   J = sum_{t=0}^{N-1} [u_t' R u_t + B_u(u_t)]
//     + sum_{t=1}^{N}   [ee_t' Q ee_t + B_beta(x_t)]
//
// with ee_t = FK(x_t) - reference[t-1]. B_u and B_beta are relaxed barriers on
// the normalised slack of the input limits and the joint-angle box.
struct MpcProblem {
  int horizon = 20;
  Eigen::Vector3d q_diag = Eigen::Vector3d::Constant(100.0);
  MpcInput r_diag = MpcInput::Constant(0.1);
  double barrier_delta = 0.1;
  double barrier_weight = 1.0;
  double dt = 0.08;
  std::vector<Point3> reference;  // horizon entries: r(t_1) .. r(t_N)

  RobotConfig robot;

  int max_iterations = 100;
  double cost_tolerance = 1e-8;
};

// Throws std::invalid_argument when horizon < 2, a weight is not positive,
// delta is outside (0, 1) or the reference does not cover the horizon.
void validate_problem(const MpcProblem& problem);

// Euler step of the unicycle-plus-joint-integrator model, heading wrapped.
MpcState mpc_dynamics(const MpcState& x, const MpcInput& u, double dt);

// Jacobians of mpc_dynamics.
void mpc_dynamics_jacobians(const MpcState& x, const MpcInput& u, double dt,
                            MpcStateMatrix* a, MpcInputMatrix* b);

// World end-effector of a model state and its Jacobian w.r.t. the state.
Point3 mpc_end_effector(const MpcState& x, const RobotConfig& robot,
                        Eigen::Matrix<double, 3, kMpcStateDim>* jac = nullptr);

MpcState make_mpc_state(const Pose2D& pose, const Vector4d& beta);

struct SlqResult {
  std::vector<MpcInput> inputs;    // N
  std::vector<MpcState> states;    // N + 1, states[0] = x0
  std::vector<double> cost_history;  // cost after every accepted iterate, starting with the initial rollout
  int iterations = 0;
  bool converged = false;
  // The line search could not decrease the cost before convergence.
  bool line_search_failed = false;
};

std::vector<MpcState> mpc_rollout(const MpcProblem& problem, const MpcState& x0,
                                  const std::vector<MpcInput>& inputs);

double mpc_total_cost(const MpcProblem& problem, const MpcState& x0,
                      const std::vector<MpcInput>& inputs);

// Exact gradient of mpc_total_cost w.r.t. the input sequence (adjoint pass).
std::vector<MpcInput> mpc_cost_gradient(const MpcProblem& problem,
                                        const MpcState& x0,
                                        const std::vector<MpcInput>& inputs);

// Sequential linear-quadratic solve: linearise the model and quadratise the
// cost about the current rollout, Riccati backward pass, forward rollout with
// backtracking. Stops when the cost decrease drops below
// problem.cost_tolerance or after problem.max_iterations. Only decreasing
// iterates are accepted. `initial_inputs` (size N) warm-starts the solve;
// empty means zeros.
SlqResult slq_solve(const MpcProblem& problem, const MpcState& x0,
                    const std::vector<MpcInput>& initial_inputs = {});

// Receding-horizon wrapper: solves, applies the first input and keeps the
// shifted solution as the next warm start.
class MpcController {
 public:
  explicit MpcController(MpcProblem problem);

  // reference must hold problem.horizon points starting one step ahead.
  MpcInput step(const MpcState& x0, const std::vector<Point3>& reference);

  const SlqResult& last_result() const { return last_; }
  const MpcProblem& problem() const { return problem_; }

 private:
  MpcProblem problem_;
  std::vector<MpcInput> warm_start_;
  SlqResult last_;
};

}  // namespace cotransport
