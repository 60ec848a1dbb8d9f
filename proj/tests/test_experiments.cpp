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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cotransport/cli.hpp"
#include "cotransport/config_io.hpp"
#include "cotransport/log_io.hpp"
#include "cotransport/metrics.hpp"
#include "cotransport/scenario.hpp"
#include "cotransport/simulation.hpp"

namespace cotransport {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cotransport_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Benchmark, GoldenGeometry) {
  const auto s = build_benchmark_scenario();
  EXPECT_EQ(s.n_d(), 60u);
  EXPECT_EQ(s.trajectories[1].size(), 60u);
  EXPECT_EQ(s.load_length, 0.65);
  EXPECT_EQ(benchmark::kGamma, 0.4);
  EXPECT_EQ(benchmark::kDt, 0.08);
  RobotConfig robot;
  EXPECT_EQ(robot.gamma, 0.4);
  EXPECT_EQ(robot.dt, 0.08);
  EXPECT_EQ(s.starts[0].x, 1.0);
  EXPECT_EQ(s.starts[0].y, -1.0);
  EXPECT_EQ(s.starts[1].x, 1.65);
  EXPECT_EQ(s.starts[1].y, -1.0);
  const double radius[2] = {1.0, 1.65};
  for (int a = 0; a < 2; ++a) {
    const auto& t = s.trajectories[a];
    EXPECT_EQ(t[0], Point3(radius[a], -1.0, 0.2));
    EXPECT_EQ(t[59], Point3(-radius[a], -1.0, 0.2));
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_EQ(t[i].z(), 0.2);
      // Every waypoint lies on the straight legs or on the semicircle.
      const Point3& w = t[i];
      const double on_leg = std::abs(std::abs(w.x()) - radius[a]) + std::max(0.0, w.y());
      const double on_arc = std::abs(std::hypot(w.x(), w.y()) - radius[a]) + std::max(0.0, -w.y());
      EXPECT_LT(std::min(on_leg, on_arc), 1e-12);
    }
  }
  // Chords shorten the semicircle slightly; the dense limit recovers 2 + pi r.
  EXPECT_NEAR(s.trajectories[0].arc_length(), 2.0 + kPi, 2e-3);
  EXPECT_NEAR(s.trajectories[1].arc_length(), 2.0 + 1.65 * kPi, 2e-3);
  const auto dense = build_benchmark_scenario(4001);
  EXPECT_NEAR(dense.trajectories[0].arc_length(), 5.14159, 1e-5);
  EXPECT_NEAR(dense.trajectories[1].arc_length(), 7.18363, 1e-5);
  for (std::size_t i = 0; i < 60; ++i) {
    EXPECT_NEAR((s.trajectories[0][i] - s.trajectories[1][i]).norm(), 0.65, 1e-12);
  }
  EXPECT_THROW(build_benchmark_scenario(3), std::invalid_argument);
}

TEST(Benchmark, ScenarioFileRoundTrip) {
  const auto dir = scratch_dir("scenario");
  const auto s = build_benchmark_scenario(12);
  save_scenario(s, (dir / "s.json").string());
  const auto back = load_scenario((dir / "s.json").string());
  for (int a = 0; a < 2; ++a) {
    EXPECT_EQ(back.trajectories[a].waypoints(), s.trajectories[a].waypoints());
    EXPECT_EQ(back.starts[a].theta, s.starts[a].theta);
  }
  EXPECT_EQ(back.load_length, s.load_length);
  EXPECT_THROW(load_scenario((dir / "missing.json").string()), std::runtime_error);
}

TEST(Metrics, TrackingErrorMatchesDenseSampling) {
  const auto s = build_benchmark_scenario();
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-2.0, 2.0), z(0.0, 0.4);
  for (int i = 0; i < 200; ++i) {
    const Point3 ee(u(rng), u(rng) - 0.5, z(rng));
    const auto& t = s.trajectories[i % 2];
    double dense = INFINITY;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      for (int j = 0; j <= 2000; ++j) {
        const double a = j / 2000.0;
        dense = std::min(dense, (ee - (t[k] * (1 - a) + t[k + 1] * a)).norm());
      }
    }
    EXPECT_NEAR(tracking_error(ee, t), dense, 1e-6);
  }
  EXPECT_EQ(tracking_error(s.trajectories[0][5], s.trajectories[0]), 0.0);
}

SimulationLog static_log(std::size_t steps) {
  SimulationLog log;
  log.load_length = 0.65;
  log.method = "png-lf";
  for (std::size_t k = 0; k < steps; ++k) {
    LogRecord r;
    r.t = 0.08 * static_cast<double>(k);
    r.robots[0].ee = Point3(0.0, 0.0, 0.2);
    r.robots[1].ee = Point3(0.65, 0.0, 0.2);
    r.load_len = 0.65;
    log.records.push_back(r);
  }
  return log;
}

TEST(Metrics, StaticPairHasConstantLoadLength) {
  const auto log = static_log(5);
  for (const double l : load_length_series(log)) EXPECT_EQ(l, 0.65);
  const auto s = summarize(log);
  EXPECT_EQ(s.max_load_deviation, 0.0);
  EXPECT_EQ(s.steps, 5u);
  EXPECT_NEAR(s.duration, 0.32, 1e-15);
  EXPECT_EQ(s.follower_convergence_rate, 1.0);
}

TEST(LogIo, GoldenHeaderAndRowShape) {
  std::ostringstream out;
  write_log_csv(static_log(1), out);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "t,x1,y1,th1,v1,w1,b1_1,b1_2,b1_3,b1_4,ee1_x,ee1_y,ee1_z,stop1,"
            "x2,y2,th2,v2,w2,b2_1,b2_2,b2_3,b2_4,ee2_x,ee2_y,ee2_z,stop2,"
            "p,load_len,err1,err2");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  std::ostringstream many;
  write_log_csv(static_log(7), many);
  std::istringstream lines(many.str());
  std::string line;
  while (std::getline(lines, line)) EXPECT_EQ(std::count(line.begin(), line.end(), ','), 30);
}

TEST(LogIo, RoundTripIsBitExact) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  SimulationLog log;
  log.method = "rrt-lf";
  log.seed = 99;
  log.config_hash = "0123456789abcdef";
  log.completed = true;
  log.leader = 1;
  log.n_d = 60;
  log.load_length = 0.65;
  for (int k = 0; k < 50; ++k) {
    LogRecord r;
    r.t = 0.08 * k;
    for (auto& s : r.robots) {
      s.pose = Pose2D{u(rng), u(rng), u(rng)};
      s.cmd = {u(rng) * 1e-7, u(rng) * 1e300};
      s.beta = Vector4d(u(rng), 1e-310, -0.0, 0.1);
      s.ee = Point3(u(rng), u(rng), std::nextafter(0.2, 1.0));
      s.stop = k % 3 == 0;
    }
    r.robots[0].ik_converged = k != 7;
    r.p = static_cast<std::size_t>(k / 4 + 1);
    r.load_len = u(rng);
    r.err = {u(rng), std::ldexp(1.0, -1070)};
    log.records.push_back(r);
  }
  const auto dir = scratch_dir("logio");
  const auto path = (dir / "sub" / "run.csv").string();
  write_log_csv(log, path);
  ASSERT_TRUE(fs::exists(log_meta_path(path)));
  const auto back = read_log_csv(path);
  ASSERT_EQ(back.records.size(), log.records.size());
  for (std::size_t k = 0; k < log.records.size(); ++k) {
    const auto& a = log.records[k];
    const auto& b = back.records[k];
    EXPECT_EQ(std::memcmp(&a.t, &b.t, sizeof(double)), 0);
    for (int i = 0; i < 2; ++i) {
      const auto& x = a.robots[i];
      const auto& y = b.robots[i];
      const double xs[] = {x.pose.x, x.pose.y, x.pose.theta, x.cmd.v, x.cmd.omega, x.beta[0], x.beta[1],
                           x.beta[2], x.beta[3], x.ee[0], x.ee[1], x.ee[2]};
      const double ys[] = {y.pose.x, y.pose.y, y.pose.theta, y.cmd.v, y.cmd.omega, y.beta[0], y.beta[1],
                           y.beta[2], y.beta[3], y.ee[0], y.ee[1], y.ee[2]};
      EXPECT_EQ(std::memcmp(xs, ys, sizeof xs), 0) << "row " << k;
      EXPECT_EQ(x.stop, y.stop);
    }
    EXPECT_EQ(b.robots[0].ik_converged, k != 7);
    EXPECT_EQ(a.p, b.p);
    EXPECT_EQ(std::memcmp(&a.load_len, &b.load_len, sizeof(double)), 0);
    EXPECT_EQ(std::memcmp(a.err.data(), b.err.data(), 2 * sizeof(double)), 0);
  }
  EXPECT_EQ(back.method, "rrt-lf");
  EXPECT_EQ(back.seed, 99u);
  EXPECT_EQ(back.config_hash, log.config_hash);
  EXPECT_TRUE(back.completed);
  EXPECT_EQ(back.leader, 1u);
  // Writing the read-back log reproduces the same bytes.
  const auto again = (dir / "again.csv").string();
  write_log_csv(back, again);
  EXPECT_EQ(slurp(path), slurp(again));
}

TEST(LogIo, ErrorsNameThePath) {
  const auto dir = scratch_dir("logerr");
  const auto bad = (dir / "bad.csv").string();
  std::ofstream(bad) << "t,x1\n0,1\n";
  try {
    read_log_csv(bad);
    FAIL() << "expected LogIoError";
  } catch (const LogIoError& e) {
    EXPECT_EQ(e.path(), bad);
    EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
  }
  EXPECT_THROW(read_log_csv((dir / "none.csv").string()), LogIoError);
  EXPECT_THROW(write_log_csv(static_log(1), "/proc/cotransport/x.csv"), LogIoError);
}

TEST(ConfigIo, DefaultsRoundTripAndOverride) {
  const SimulationConfig d;
  const auto j = config_to_json(d);
  const auto same = config_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(config_hash(same), config_hash(d));
  EXPECT_EQ(config_hash(d).size(), 16u);
  const auto over = config_from_json(nlohmann::json::parse(
      R"({"png": {"navigation_constant": 4}, "mpc": {"horizon": 12}, "sampling": {"objective": "nearest"}})"));
  EXPECT_EQ(over.navigation_constant, 4.0);
  EXPECT_EQ(over.mpc.problem.horizon, 12);
  EXPECT_EQ(over.sampling.objective, SamplingObjective::kNearest);
  EXPECT_NE(config_hash(over), config_hash(d));
  // Arm reach follows the configured links unless given.
  const auto longer = config_from_json(nlohmann::json::parse(R"({"arm": {"tool": [0.2, 0, 0]}})"));
  EXPECT_NEAR(longer.robot.rho_l, d.robot.rho_l + 0.074, 1e-12);
  const auto fixed = config_from_json(nlohmann::json::parse(R"({"robot": {"rho_l": 0.5}})"));
  EXPECT_EQ(fixed.robot.rho_l, 0.5);
}

TEST(ConfigIo, RejectsBadContent) {
  for (const char* text : {R"({"png": {"gain": 3}})", R"({"robot": {"v_max": "fast"}})",
                           R"({"arm": {"tool": [1, 2]}})", R"({"simulation": {"leader": 2}})",
                           R"({"png": {"v_cruise": 0.5}})", R"({"mpc": {"horizon": 1}})",
                           R"({"simulation": {"n_d": 2.5}})", R"({"sampling": {"objective": "best"}})",
                           R"([1, 2])"}) {
    EXPECT_THROW(config_from_json(nlohmann::json::parse(text)), ConfigError) << text;
  }
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigFileError);
}

SimulationLog run_benchmark(Method m, std::uint64_t seed = 1) {
  SimulationConfig cfg;
  cfg.seed = seed;
  return run_simulation(build_benchmark_scenario(), cfg, m);
}

// Exhaustive scan of the stop-and-sync invariants.
void expect_sync_invariants(const SimulationLog& log) {
  const auto& r = log.records;
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    EXPECT_LE(r[k].p, r[k + 1].p);
    EXPECT_NEAR(r[k + 1].t - r[k].t, 0.08, 1e-12);
    for (int a = 0; a < 2; ++a) {
      if (r[k].robots[a].stop) {
        EXPECT_EQ(r[k + 1].robots[a].cmd, (VelocityCommand{0.0, 0.0}));
        EXPECT_EQ(r[k + 1].robots[a].pose.x, r[k].robots[a].pose.x);
        EXPECT_EQ(r[k + 1].robots[a].pose.y, r[k].robots[a].pose.y);
        EXPECT_EQ(r[k + 1].robots[a].pose.theta, r[k].robots[a].pose.theta);
      }
    }
    if (r[k + 1].p > r[k].p) {
      EXPECT_FALSE(r[k + 1].robots[0].stop);
      EXPECT_FALSE(r[k + 1].robots[1].stop);
    }
  }
}

TEST(Simulation, PngLeaderFollowerRun) {
  const auto log = run_benchmark(Method::kPngLeaderFollower);
  ASSERT_TRUE(log.completed);
  EXPECT_EQ(log.records.front().t, 0.0);
  expect_sync_invariants(log);
  const auto s = summarize(log);
  EXPECT_LE(s.max_load_deviation_converged, 1e-4);
  EXPECT_LE(s.mean_tracking_error[0], s.mean_tracking_error[1]);
  EXPECT_EQ(log.method, "png-lf");
  EXPECT_EQ(log.records.back().p, 61u);
  for (const auto& r : log.records) {
    for (const auto& smp : r.robots) {
      EXPECT_LE(std::abs(smp.cmd.v), 0.26);
      EXPECT_LE(std::abs(smp.cmd.omega), 1.82);
      EXPECT_NEAR(smp.beta[1] + smp.beta[2] + smp.beta[3], 0.0, 1e-9);
    }
  }
}

TEST(Simulation, SamplingLeaderFollowerRun) {
  const auto log = run_benchmark(Method::kSamplingLeaderFollower, 3);
  ASSERT_TRUE(log.completed);
  expect_sync_invariants(log);
  EXPECT_LE(summarize(log).max_load_deviation_converged, 1e-4);
}

TEST(Simulation, MpcRunIsBounded) {
  const auto log = run_benchmark(Method::kSlqMpc);
  ASSERT_TRUE(log.completed);
  const auto s = summarize(log);
  EXPECT_LT(s.mean_tracking_error[0], 0.2);
  EXPECT_LT(s.mean_tracking_error[1], 0.2);
  const auto& lim = RobotConfig{}.arm.limits;
  for (const auto& r : log.records) {
    for (const auto& smp : r.robots) {
      EXPECT_TRUE(((smp.beta - lim.lo).array() >= 0.0).all());
      EXPECT_TRUE(((lim.hi - smp.beta).array() >= 0.0).all());
    }
  }
}

TEST(Simulation, SameSeedSameBytes) {
  for (const auto m : {Method::kPngLeaderFollower, Method::kSamplingLeaderFollower, Method::kSlqMpc}) {
    std::ostringstream a, b;
    write_log_csv(run_benchmark(m, 7), a);
    write_log_csv(run_benchmark(m, 7), b);
    EXPECT_EQ(a.str(), b.str()) << method_name(m);
  }
  std::ostringstream c, d;
  write_log_csv(run_benchmark(Method::kSamplingLeaderFollower, 7), c);
  write_log_csv(run_benchmark(Method::kSamplingLeaderFollower, 8), d);
  EXPECT_NE(c.str(), d.str());
}

TEST(Simulation, StepBudgetEndsIncomplete) {
  SimulationConfig cfg;
  cfg.step_budget = 20;
  const auto log = run_simulation(build_benchmark_scenario(), cfg, Method::kPngLeaderFollower);
  EXPECT_FALSE(log.completed);
  EXPECT_EQ(log.records.size(), 21u);
}

TEST(Simulation, MethodNames) {
  for (const auto m : {Method::kPngLeaderFollower, Method::kSamplingLeaderFollower, Method::kSlqMpc}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_THROW(parse_method("pid"), std::invalid_argument);
  const Trajectory3D t({Point3(0, 0, 0), Point3(1, 0, 0), Point3(1, 2, 0)});
  const TimedReference ref{&t, 0.5};
  EXPECT_EQ(ref.end_time(), 1.0);
  EXPECT_EQ(ref.at(0.25), Point3(0.5, 0, 0));
  EXPECT_EQ(ref.at(0.75), Point3(1, 1, 0));
  EXPECT_EQ(ref.at(5.0), Point3(1, 2, 0));
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cotransport");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, RunThenMetrics) {
  const auto dir = scratch_dir("cli_run");
  const auto r = cli({"run", "--method", "png-lf", "--scenario", "benchmark", "--seed", "1", "--out",
                      dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = dir / "png-lf_seed1.csv";
  EXPECT_TRUE(fs::exists(csv));
  EXPECT_TRUE(fs::exists(log_meta_path(csv.string())));
  const auto m = cli({"metrics", "--log", csv.string()});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NE(m.out.find("max_load_deviation"), std::string::npos);
  EXPECT_NE(m.out.find("completed                  1"), std::string::npos);
}

TEST(Cli, FailuresHaveDistinctCodes) {
  const auto dir = scratch_dir("cli_err");
  const auto out = dir / "out";
  auto r = cli({"run", "--method", "png-lf", "--scenario", (dir / "missing.json").string(), "--out",
                out.string()});
  EXPECT_EQ(r.code, static_cast<int>(ExitCode::kFileError));
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(r.err.rfind("error code=file_error exit=3 message=\"", 0), 0u);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);

  r = cli({"run", "--method", "png-lf", "--bogus", "--out", out.string()});
  EXPECT_EQ(r.code, static_cast<int>(ExitCode::kUsage));
  r = cli({"run", "--method", "teleport", "--out", out.string()});
  EXPECT_EQ(r.code, static_cast<int>(ExitCode::kUsage));

  std::ofstream(dir / "bad.json") << R"({"png": {"gain": 1}})";
  r = cli({"run", "--method", "png-lf", "--config", (dir / "bad.json").string(), "--out", out.string()});
  EXPECT_EQ(r.code, static_cast<int>(ExitCode::kInvalidInput));
  EXPECT_FALSE(fs::exists(out));

  std::ofstream(dir / "budget.json") << R"({"simulation": {"step_budget": 5}})";
  r = cli({"run", "--method", "png-lf", "--config", (dir / "budget.json").string(), "--out",
           out.string()});
  EXPECT_EQ(r.code, static_cast<int>(ExitCode::kIncomplete));

  r = cli({"metrics", "--log", (dir / "none.csv").string()});
  EXPECT_EQ(r.code, static_cast<int>(ExitCode::kFileError));
  EXPECT_EQ(cli({}).code, static_cast<int>(ExitCode::kUsage));
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, PlanWritesScenario) {
  const auto dir = scratch_dir("cli_plan");
  std::ofstream(dir / "world.txt") << "cotransport-world 1\nbounds -4 -4 4 4\nobstacle 4\n"
                                      "-0.5 -1\n0.5 -1\n0.5 1\n-0.5 1\n";
  const auto out = (dir / "scenario.json").string();
  const auto r = cli({"plan", "--world", (dir / "world.txt").string(), "--start", "-3", "0", "--goal",
                      "3", "0", "--clearance", "0.5", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = load_scenario(out);
  EXPECT_EQ(s.n_d(), 60u);
  EXPECT_GE(s.planned_path.size(), 2u);
  for (std::size_t i = 0; i < s.n_d(); ++i) {
    EXPECT_NEAR((s.trajectories[0][i] - s.trajectories[1][i]).norm(), 0.65, 0.0065);
  }
  const auto blocked = cli({"plan", "--world", (dir / "world.txt").string(), "--start", "0", "0",
                            "--goal", "3", "0", "--out", out});
  EXPECT_EQ(blocked.code, static_cast<int>(ExitCode::kPlanningFailed));
  const auto run = cli({"run", "--method", "png-lf", "--scenario", out, "--out", (dir / "o").string()});
  EXPECT_EQ(run.code, 0) << run.err;
}

}  // namespace
}  // namespace cotransport
