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

#include "cotransport/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cotransport/config_io.hpp"
#include "cotransport/diff_drive.hpp"
#include "cotransport/guidance.hpp"
#include "cotransport/metrics.hpp"
#include "cotransport/polyline.hpp"
#include "cotransport/sync.hpp"

namespace cotransport {

std::string method_name(Method m) {
  switch (m) {
    case Method::kPngLeaderFollower:
      return "png-lf";
    case Method::kSamplingLeaderFollower:
      return "rrt-lf";
    case Method::kSlqMpc:
      return "slq-mpc";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "png-lf" || name == "png_lf") return Method::kPngLeaderFollower;
  if (name == "rrt-lf" || name == "rrt_lf") return Method::kSamplingLeaderFollower;
  if (name == "slq-mpc" || name == "slq_mpc") return Method::kSlqMpc;
  throw std::invalid_argument("unknown method '" + name + "'");
}

void validate_simulation_config(const SimulationConfig& cfg) {
  validate_config(cfg.robot);
  if (!(cfg.navigation_constant > 0.0)) {
    throw std::invalid_argument("config: navigation constant must be > 0");
  }
  if (!(cfg.v_cruise > 0.0 && cfg.v_cruise <= cfg.robot.v_max)) {
    throw std::invalid_argument("config: v_cruise must be in (0, v_max]");
  }
  if (cfg.sampling.count == 0) throw std::invalid_argument("config: sampling count must be >= 1");
  if (cfg.leader > 1) throw std::invalid_argument("config: leader must be 0 or 1");
  if (cfg.step_budget == 0) throw std::invalid_argument("config: step budget must be >= 1");
  if (cfg.n_d < 4) throw std::invalid_argument("config: n_d must be >= 4");
  if (!(cfg.mpc.reference_speed > 0.0)) {
    throw std::invalid_argument("config: mpc reference speed must be > 0");
  }
  if (cfg.ik.max_iterations < 1 || !(cfg.ik.tolerance > 0.0) ||
      !(cfg.ik.load_tolerance > 0.0)) {
    throw std::invalid_argument("config: invalid IK options");
  }
  MpcProblem probe = cfg.mpc.problem;
  probe.reference.assign(static_cast<std::size_t>(std::max(probe.horizon, 0)), Point3::Zero());
  validate_problem(probe);
}

Point3 TimedReference::at(double t) const {
  const auto& tr = *trajectory;
  const double s = std::clamp(t / segment_time, 0.0, static_cast<double>(tr.size() - 1));
  const auto i = std::min(static_cast<std::size_t>(s), tr.size() - 2);
  return lift_to_trajectory(tr, i, std::clamp(s - static_cast<double>(i), 0.0, 1.0));
}

double TimedReference::end_time() const {
  return segment_time * static_cast<double>(trajectory->size() - 1);
}

namespace {

constexpr double kSettleDt = 1e6;  // rate band wide enough to span the joint box

struct RunContext {
  const Scenario& scenario;
  const SimulationConfig& cfg;
  std::array<RobotConfig, 2> robots;
  double rho_d;
};

void fill_metrics(LogRecord& rec, const Scenario& s) {
  rec.load_len = (rec.robots[0].ee - rec.robots[1].ee).norm();
  for (std::size_t a = 0; a < 2; ++a) {
    rec.err[a] = tracking_error(rec.robots[a].ee, s.trajectories[a]);
  }
}

// Initial arm configuration: unconstrained-rate IK at the start poses.
std::array<RobotRuntime, 2> settle(const RunContext& ctx, LogRecord* first) {
  std::array<RobotRuntime, 2> rt;
  for (std::size_t a = 0; a < 2; ++a) {
    rt[a].pose = ctx.scenario.starts[a];
    rt[a].joints.limits = ctx.robots[a].arm.limits;
    rt[a].joints.beta = Vector4d::Zero();
    rt[a].png.navigation_constant = ctx.cfg.navigation_constant;
    rt[a].png.v_cruise = ctx.cfg.v_cruise;
    rt[a].role = a == ctx.cfg.leader ? Role::kLeader : Role::kFollower;
  }
  const auto lf = leader_follower_step(rt, ctx.scenario.trajectories, ctx.robots,
                                       kSettleDt, ctx.scenario.load_length,
                                       ctx.cfg.leader, false, ctx.cfg.ik);
  first->t = 0.0;
  for (std::size_t a = 0; a < 2; ++a) {
    rt[a].joints.beta = lf.ik[a].beta_star;
    auto& smp = first->robots[a];
    smp.pose = rt[a].pose;
    smp.beta = lf.ik[a].beta_star;
    smp.ee = lf.ee_world[a];
    smp.candidate = lf.candidates[a];
    smp.ik_converged = lf.ik[a].converged;
    smp.ik_violation = lf.ik[a].constraint_violation;
  }
  return rt;
}

SimulationLog run_leader_follower(const RunContext& ctx, const BaseController& controller) {
  const auto& sc = ctx.scenario;
  const std::size_t n_d = sc.n_d();
  const double dt = ctx.robots[0].dt;
  const std::array<std::vector<Point2D>, 2> targets{sc.trajectories[0].projection(),
                                                   sc.trajectories[1].projection()};
  SimulationLog log;
  LogRecord first;
  auto robots = settle(ctx, &first);

  SyncState st;
  // Already inside the reachability radius of the first targets: switch
  // without moving.
  while (st.p <= n_d && reached(robots[0].pose, targets[0][st.p - 1], ctx.rho_d) &&
         reached(robots[1].pose, targets[1][st.p - 1], ctx.rho_d)) {
    ++st.p;
  }
  first.p = st.p;
  fill_metrics(first, sc);
  log.records.push_back(first);

  for (std::size_t k = 0; k < ctx.cfg.step_budget && st.p <= n_d; ++k) {
    const bool hold_leader = st.stop[ctx.cfg.leader];
    const std::array<Point2D, 2> tgt{targets[0][st.p - 1], targets[1][st.p - 1]};
    const auto step = sync_step(st, robots, tgt, ctx.rho_d, dt, n_d, controller);
    robots = step.robots;
    st = step.state;
    const auto lf = leader_follower_step(robots, sc.trajectories, ctx.robots, dt,
                                         sc.load_length, ctx.cfg.leader,
                                         hold_leader, ctx.cfg.ik);
    LogRecord rec;
    rec.t = static_cast<double>(k + 1) * dt;
    rec.p = st.p;
    for (std::size_t a = 0; a < 2; ++a) {
      robots[a].joints.beta = lf.ik[a].beta_star;
      auto& smp = rec.robots[a];
      smp.pose = robots[a].pose;
      smp.cmd = step.commands[a];
      smp.beta = lf.ik[a].beta_star;
      smp.ee = lf.ee_world[a];
      smp.candidate = lf.candidates[a];
      smp.stop = st.stop[a];
      smp.ik_converged = lf.ik[a].converged;
      smp.ik_violation = lf.ik[a].constraint_violation;
    }
    fill_metrics(rec, sc);
    log.records.push_back(rec);
  }
  log.completed = st.p > n_d;
  return log;
}

SimulationLog run_mpc(const RunContext& ctx) {
  const auto& sc = ctx.scenario;
  const std::size_t n_d = sc.n_d();
  const double dt = ctx.robots[0].dt;
  const auto& settings = ctx.cfg.mpc;
  double longest = 0.0;
  for (const auto& tr : sc.trajectories) {
    for (std::size_t i = 1; i < tr.size(); ++i) {
      longest = std::max(longest, (tr[i] - tr[i - 1]).norm());
    }
  }
  const double seg_time = longest / settings.reference_speed;
  const std::array<TimedReference, 2> refs{TimedReference{&sc.trajectories[0], seg_time},
                                           TimedReference{&sc.trajectories[1], seg_time}};
  const double end_time = refs[0].end_time();

  SimulationLog log;
  LogRecord first;
  auto robots = settle(ctx, &first);
  first.p = 1;
  fill_metrics(first, sc);
  log.records.push_back(first);

  std::array<MpcController, 2> controllers{MpcController(settings.problem),
                                           MpcController(settings.problem)};
  for (std::size_t a = 0; a < 2; ++a) {
    MpcProblem pb = settings.problem;
    pb.robot = ctx.robots[a];
    pb.dt = dt;
    controllers[a] = MpcController(pb);
  }
  const int horizon = settings.problem.horizon;
  const auto max_steps = std::min<std::size_t>(
      ctx.cfg.step_budget,
      static_cast<std::size_t>(std::ceil((end_time + settings.settle_time) / dt)));

  for (std::size_t k = 0; k < max_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    LogRecord rec;
    rec.t = static_cast<double>(k + 1) * dt;
    for (std::size_t a = 0; a < 2; ++a) {
      std::vector<Point3> window(horizon);
      for (int j = 0; j < horizon; ++j) window[j] = refs[a].at(t + (j + 1) * dt);
      auto& rt = robots[a];
      const MpcInput u = controllers[a].step(make_mpc_state(rt.pose, rt.joints.beta), window);
      const auto& cfg = ctx.robots[a];
      VelocityCommand cmd{std::clamp(u[0], -cfg.v_max, cfg.v_max),
                          std::clamp(u[1], -cfg.omega_max, cfg.omega_max)};
      const auto& lim = cfg.arm.limits;
      const Vector4d rate = u.tail<4>().cwiseMax(-lim.rate).cwiseMin(lim.rate);
      rt.pose = step_pose(rt.pose, cmd, dt);
      rt.joints.beta = (rt.joints.beta + dt * rate).cwiseMax(lim.lo).cwiseMin(lim.hi);
      auto& smp = rec.robots[a];
      smp.pose = rt.pose;
      smp.cmd = cmd;
      smp.beta = rt.joints.beta;
      smp.ee = ee_world(rt.pose, cfg, rt.joints.beta);
      smp.candidate = refs[a].at(rec.t);
      smp.ik_converged = controllers[a].last_result().converged;
    }
    const bool at_goal =
        rec.t >= end_time &&
        (rec.robots[0].ee - sc.trajectories[0].waypoints().back()).norm() <= ctx.rho_d &&
        (rec.robots[1].ee - sc.trajectories[1].waypoints().back()).norm() <= ctx.rho_d;
    rec.p = at_goal ? n_d + 1
                    : std::min(n_d, static_cast<std::size_t>(rec.t / seg_time) + 1);
    fill_metrics(rec, sc);
    log.records.push_back(rec);
    if (at_goal) {
      log.completed = true;
      break;
    }
  }
  return log;
}

}  // namespace

SimulationLog run_simulation(const Scenario& scenario, const SimulationConfig& cfg,
                             Method method) {
  validate_scenario(scenario);
  validate_simulation_config(cfg);
  RunContext ctx{scenario, cfg, {cfg.robot, cfg.robot}, reachability_radius(cfg.robot)};

  SimulationLog log;
  switch (method) {
    case Method::kPngLeaderFollower:
      log = run_leader_follower(ctx, png_controller(ctx.robots));
      break;
    case Method::kSamplingLeaderFollower: {
      std::array<std::mt19937_64, 2> rngs;
      for (std::size_t a = 0; a < 2; ++a) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                          static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(a)};
        rngs[a].seed(seq);
      }
      const BaseController controller = [&](std::size_t robot, RobotRuntime& rt,
                                             const Point2D& target) {
        return velocity_sampling_step(rt.pose, target, ctx.rho_d, ctx.robots[robot],
                                      rngs[robot], cfg.sampling);
      };
      log = run_leader_follower(ctx, controller);
      break;
    }
    case Method::kSlqMpc:
      log = run_mpc(ctx);
      break;
  }
  log.method = method_name(method);
  log.seed = cfg.seed;
  log.config_hash = config_hash(cfg);
  log.leader = cfg.leader;
  log.n_d = scenario.n_d();
  log.load_length = scenario.load_length;
  return log;
}

}  // namespace cotransport
