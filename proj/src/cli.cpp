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

#include "cotransport/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cotransport/config_io.hpp"
#include "cotransport/log_io.hpp"
#include "cotransport/metrics.hpp"
#include "cotransport/prm.hpp"
#include "cotransport/scenario.hpp"
#include "cotransport/simulation.hpp"
#include "cotransport/world.hpp"

namespace cotransport {

namespace {

// Failure carrying its exit code.
struct CliFailure {
  ExitCode code;
  std::string message;
};

const char* code_name(ExitCode c) {
  switch (c) {
    case ExitCode::kOk:
      return "ok";
    case ExitCode::kInternal:
      return "internal";
    case ExitCode::kUsage:
      return "usage";
    case ExitCode::kFileError:
      return "file_error";
    case ExitCode::kInvalidInput:
      return "invalid_input";
    case ExitCode::kPlanningFailed:
      return "planning_failed";
    case ExitCode::kNoPath:
      return "no_path";
    case ExitCode::kIncomplete:
      return "incomplete";
  }
  return "internal";
}

int report(std::ostream& err, ExitCode code, const std::string& message) {
  std::string escaped;
  for (const char ch : message) {
    if (ch == '"' || ch == '\\') escaped += '\\';
    escaped += ch == '\n' ? ' ' : ch;
  }
  err << "error code=" << code_name(code) << " exit=" << static_cast<int>(code)
      << " message=\"" << escaped << "\"\n";
  return static_cast<int>(code);
}

void require_readable(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw CliFailure{ExitCode::kFileError, "cannot read " + what + " '" + path + "'"};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

struct RunArgs {
  std::string method;
  std::string scenario = "benchmark";
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string config;
};

int do_run(const RunArgs& a, std::ostream& out) {
  Method method{};
  try {
    method = parse_method(a.method);
  } catch (const std::invalid_argument& e) {
    throw CliFailure{ExitCode::kUsage, e.what()};
  }
  SimulationConfig cfg;
  if (!a.config.empty()) {
    require_readable(a.config, "config file");
    try {
      cfg = load_config(a.config);
    } catch (const ConfigError& e) {
      throw CliFailure{ExitCode::kInvalidInput, e.what()};
    }
  }
  if (a.seed) cfg.seed = *a.seed;
  Scenario scenario;
  try {
    if (a.scenario == "benchmark") {
      scenario = build_benchmark_scenario(cfg.n_d);
    } else {
      require_readable(a.scenario, "scenario file");
      scenario = load_scenario(a.scenario);
    }
    validate_scenario(scenario);
  } catch (const std::invalid_argument& e) {
    throw CliFailure{ExitCode::kInvalidInput, e.what()};
  }
  SimulationLog log;
  try {
    log = run_simulation(scenario, cfg, method);
  } catch (const std::invalid_argument& e) {
    throw CliFailure{ExitCode::kInvalidInput, e.what()};
  }
  const auto csv = (std::filesystem::path(a.out_dir) /
                    (method_name(method) + "_seed" + std::to_string(cfg.seed) + ".csv"))
                       .string();
  try {
    write_log_csv(log, csv);
  } catch (const LogIoError& e) {
    throw CliFailure{ExitCode::kFileError, e.what()};
  }
  const auto s = summarize(log);
  out << "log " << csv << "\n"
      << "meta " << log_meta_path(csv) << "\n"
      << "steps " << s.steps << " completed " << (s.completed ? 1 : 0)
      << " max_load_deviation " << fmt(s.max_load_deviation) << "\n";
  if (!log.completed) {
    throw CliFailure{ExitCode::kIncomplete, "run ended without reaching the final waypoint"};
  }
  return 0;
}

struct PlanArgs {
  std::string world;
  std::vector<double> start;
  std::vector<double> goal;
  std::string out;
  PrmParams prm;
  std::size_t n_d = 60;
  double load_length = 0.65;
  double height = 0.2;
};

int do_plan(const PlanArgs& a, std::ostream& out) {
  require_readable(a.world, "world file");
  World2D world;
  try {
    world = load_world(a.world);
  } catch (const WorldFormatError& e) {
    throw CliFailure{ExitCode::kInvalidInput, e.what()};
  }
  const Point2D q_init(a.start[0], a.start[1]);
  const Point2D q_goal(a.goal[0], a.goal[1]);
  Scenario sc;
  try {
    const auto path = plan_path(world, q_init, q_goal, a.prm);
    auto pair = path_to_trajectories(path.points, a.load_length, a.height, a.n_d, &world);
    sc.trajectories = {std::move(pair.left), std::move(pair.right)};
    sc.planned_path = path.points;
  } catch (const NoPathError& e) {
    throw CliFailure{ExitCode::kNoPath, e.what()};
  } catch (const PlanningError& e) {
    throw CliFailure{ExitCode::kPlanningFailed, e.what()};
  } catch (const std::invalid_argument& e) {
    throw CliFailure{ExitCode::kInvalidInput, e.what()};
  }
  // Bases start on the first waypoints, facing along the first segment.
  for (std::size_t r = 0; r < 2; ++r) {
    const Point3 d = sc.trajectories[r][1] - sc.trajectories[r][0];
    sc.starts[r] = make_pose(sc.trajectories[r][0].x(), sc.trajectories[r][0].y(),
                             std::atan2(d.y(), d.x()));
  }
  sc.load_length = a.load_length;
  sc.world = world;
  try {
    save_scenario(sc, a.out);
  } catch (const std::runtime_error& e) {
    throw CliFailure{ExitCode::kFileError, e.what()};
  }
  out << "scenario " << a.out << "\n"
      << "path_points " << sc.planned_path.size() << " waypoints " << sc.n_d() << "\n";
  return 0;
}

int do_metrics(const std::string& log_path, std::ostream& out) {
  require_readable(log_path, "log file");
  SimulationLog log;
  try {
    log = read_log_csv(log_path);
  } catch (const LogIoError& e) {
    throw CliFailure{ExitCode::kInvalidInput, e.what()};
  }
  if (log.load_length <= 0.0) log.load_length = 0.65;
  const auto s = summarize(log);
  out << "metric                     value\n"
      << "max_load_deviation         " << fmt(s.max_load_deviation) << "\n"
      << "mean_load_deviation        " << fmt(s.mean_load_deviation) << "\n"
      << "mean_tracking_error_1      " << fmt(s.mean_tracking_error[0]) << "\n"
      << "mean_tracking_error_2      " << fmt(s.mean_tracking_error[1]) << "\n"
      << "duration_s                 " << fmt(s.duration) << "\n"
      << "completed                  " << (s.completed ? 1 : 0) << "\n"
      << "steps                      " << s.steps << "\n"
      << "follower_convergence_rate  " << fmt(s.follower_convergence_rate) << "\n";
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cooperative rod transport by two mobile manipulators", "cotransport"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Simulate one method and write a CSV log");
  run_cmd->add_option("--method", run.method, "png-lf | rrt-lf | slq-mpc")->required();
  run_cmd->add_option("--scenario", run.scenario, "'benchmark' or a scenario JSON file");
  run_cmd->add_option("--seed", run.seed, "RNG seed (overrides the config)");
  run_cmd->add_option("--out", run.out_dir, "Output directory")->required();
  run_cmd->add_option("--config", run.config, "Config JSON file");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "PRM path and trajectory pair for a world file");
  plan_cmd->add_option("--world", plan.world, "World file")->required();
  plan_cmd->add_option("--start", plan.start, "Start x y")->expected(2)->required();
  plan_cmd->add_option("--goal", plan.goal, "Goal x y")->expected(2)->required();
  plan_cmd->add_option("--out", plan.out, "Output scenario JSON")->required();
  plan_cmd->add_option("--samples", plan.prm.samples, "PRM sample count");
  plan_cmd->add_option("--neighbors", plan.prm.neighbors, "PRM neighbour count");
  plan_cmd->add_option("--clearance", plan.prm.robot_radius, "Obstacle growth, m");
  plan_cmd->add_option("--seed", plan.prm.seed, "PRM seed");
  plan_cmd->add_option("--waypoints", plan.n_d, "Waypoints per trajectory");
  plan_cmd->add_option("--load-length", plan.load_length, "Rod length, m");
  plan_cmd->add_option("--height", plan.height, "Carry height, m");

  std::string log_path;
  auto* metrics_cmd = app.add_subcommand("metrics", "Summarize a CSV log");
  metrics_cmd->add_option("--log", log_path, "Log CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return report(err, ExitCode::kUsage, e.what());
  }

  try {
    if (*run_cmd) return do_run(run, out);
    if (*plan_cmd) return do_plan(plan, out);
    return do_metrics(log_path, out);
  } catch (const CliFailure& f) {
    return report(err, f.code, f.message);
  } catch (const std::exception& e) {
    return report(err, ExitCode::kInternal, e.what());
  }
}

}  // namespace cotransport
