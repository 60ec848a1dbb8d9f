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

#include "cotransport/scenario.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace cotransport {

void validate_scenario(const Scenario& scenario) {
  if (scenario.trajectories[0].size() != scenario.trajectories[1].size()) {
    throw std::invalid_argument("scenario: trajectories differ in waypoint count");
  }
  if (scenario.trajectories[0].size() < 2) {
    throw std::invalid_argument("scenario: trajectories need at least 2 waypoints");
  }
  if (!(scenario.load_length > 0.0)) {
    throw std::invalid_argument("scenario: load length must be > 0");
  }
}

Scenario build_benchmark_scenario(std::size_t n_d) {
  using namespace benchmark;
  if (n_d < 4) throw std::invalid_argument("benchmark scenario needs n_d >= 4");
  // Segments per straight leg, proportional to the mid-line geometry.
  const double mid_radius = 0.5 * (kInnerRadius + kOuterRadius);
  const double mid_length = 2.0 * kStraightLength + kPi * mid_radius;
  const auto segments = static_cast<long>(n_d - 1);
  long leg = std::lround(static_cast<double>(segments) * kStraightLength / mid_length);
  leg = std::clamp(leg, 1L, (segments - 1) / 2);
  const long arc = segments - 2 * leg;

  auto build = [&](double r) {
    std::vector<Point3> w;
    for (long k = 0; k <= leg; ++k) {
      w.emplace_back(r, -kStraightLength + kStraightLength * static_cast<double>(k) / static_cast<double>(leg),
                     kCarryHeight);
    }
    for (long j = 1; j <= arc; ++j) {
      const double ang = kPi * static_cast<double>(j) / static_cast<double>(arc);
      w.emplace_back(r * std::cos(ang), r * std::sin(ang), kCarryHeight);
    }
    // cos(pi) rounding: pin the arc end exactly onto x = -r, y = 0.
    w.back() = Point3(-r, 0.0, kCarryHeight);
    for (long k = 1; k <= leg; ++k) {
      w.emplace_back(-r, -kStraightLength * static_cast<double>(k) / static_cast<double>(leg),
                     kCarryHeight);
    }
    return Trajectory3D(std::move(w));
  };

  Scenario s{{build(kInnerRadius), build(kOuterRadius)},
             {make_pose(kInnerRadius, -kStraightLength, 0.5 * kPi),
              make_pose(kOuterRadius, -kStraightLength, 0.5 * kPi)},
             kLoadLength,
             std::nullopt,
             {}};
  return s;
}

namespace {

using nlohmann::json;

json point_json(const Point3& p) { return json::array({p.x(), p.y(), p.z()}); }

}  // namespace

void save_scenario(const Scenario& scenario, const std::string& path) {
  json j;
  j["format"] = "cotransport-scenario";
  j["version"] = 1;
  j["load_length"] = scenario.load_length;
  j["starts"] = json::array();
  for (const auto& s : scenario.starts) j["starts"].push_back({s.x, s.y, s.theta});
  j["trajectories"] = json::array();
  for (const auto& t : scenario.trajectories) {
    json pts = json::array();
    for (const auto& w : t.waypoints()) pts.push_back(point_json(w));
    j["trajectories"].push_back(pts);
  }
  if (!scenario.planned_path.empty()) {
    j["path"] = json::array();
    for (const auto& p : scenario.planned_path) j["path"].push_back({p.x(), p.y()});
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing scenario file '" + path + "'");
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
    if (j.at("format") != "cotransport-scenario" || j.at("version") != 1) {
      throw std::invalid_argument("unsupported scenario format or version");
    }
    Scenario s;
    s.load_length = j.at("load_length").get<double>();
    const auto& starts = j.at("starts");
    const auto& trajs = j.at("trajectories");
    if (starts.size() != 2 || trajs.size() != 2) {
      throw std::invalid_argument("scenario needs exactly two robots");
    }
    for (std::size_t a = 0; a < 2; ++a) {
      const auto st = starts[a].get<std::vector<double>>();
      if (st.size() != 3) throw std::invalid_argument("start pose needs [x, y, theta]");
      s.starts[a] = make_pose(st[0], st[1], st[2]);
      std::vector<Point3> pts;
      for (const auto& p : trajs[a]) {
        const auto v = p.get<std::vector<double>>();
        if (v.size() != 3) throw std::invalid_argument("waypoint needs [x, y, z]");
        pts.emplace_back(v[0], v[1], v[2]);
      }
      s.trajectories[a] = Trajectory3D(std::move(pts));
    }
    if (j.contains("path")) {
      for (const auto& p : j["path"]) {
        const auto v = p.get<std::vector<double>>();
        if (v.size() != 2) throw std::invalid_argument("path point needs [x, y]");
        s.planned_path.emplace_back(v[0], v[1]);
      }
    }
    validate_scenario(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace cotransport
