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

#include "cotransport/config_io.hpp"

#include <cstdio>
#include <fstream>

namespace cotransport {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename V>
ordered_json vec(const V& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

template <typename V>
void read_vec(const json& j, V& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j.at(i).get<double>();
}

std::string objective_name(SamplingObjective o) {
  return o == SamplingObjective::kRing ? "ring" : "nearest";
}

bool same_kind(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) {
    return !(a.is_number_unsigned() || a.is_number_integer()) ||
           b.is_number_integer() || b.is_number_unsigned();
  }
  if (a.is_array() && b.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!same_kind(a[i], b[i])) return false;
    }
    return true;
  }
  return a.type() == b.type();
}

void merge_checked(json& base, const json& over, const std::string& where) {
  if (!over.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : over.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!base.contains(key)) throw ConfigError("unknown config key '" + path + "'");
    json& slot = base[key];
    if (slot.is_object()) {
      merge_checked(slot, value, path);
    } else if (!same_kind(slot, value)) {
      throw ConfigError("config key '" + path + "' has the wrong type or size");
    } else {
      slot = value;
    }
  }
}

SimulationConfig parse_full(const json& j) {
  SimulationConfig c;
  const auto& r = j.at("robot");
  c.robot.v_max = r.at("v_max").get<double>();
  c.robot.omega_max = r.at("omega_max").get<double>();
  c.robot.rho_l = r.at("rho_l").get<double>();
  c.robot.gamma = r.at("gamma").get<double>();
  c.robot.dt = r.at("dt").get<double>();
  read_vec(r.at("mount_offset"), c.robot.mount_offset);

  const auto& a = j.at("arm");
  auto& arm = c.robot.arm;
  for (std::size_t i = 0; i < 4; ++i) {
    read_vec(a.at("origins").at(i), arm.origins[i]);
    read_vec(a.at("axes").at(i), arm.axes[i]);
  }
  read_vec(a.at("tool"), arm.tool);
  read_vec(a.at("lower"), arm.limits.lo);
  read_vec(a.at("upper"), arm.limits.hi);
  read_vec(a.at("rate"), arm.limits.rate);
  read_vec(a.at("horizontal_mask"), arm.horizontal_mask);
  arm.horizontal_sum = a.at("horizontal_sum").get<double>();

  const auto& p = j.at("png");
  c.navigation_constant = p.at("navigation_constant").get<double>();
  c.v_cruise = p.at("v_cruise").get<double>();

  const auto& s = j.at("sampling");
  c.sampling.count = s.at("count").get<std::size_t>();
  const auto obj = s.at("objective").get<std::string>();
  if (obj == "ring") {
    c.sampling.objective = SamplingObjective::kRing;
  } else if (obj == "nearest") {
    c.sampling.objective = SamplingObjective::kNearest;
  } else {
    throw ConfigError("sampling.objective must be 'ring' or 'nearest'");
  }

  const auto& m = j.at("mpc");
  auto& pb = c.mpc.problem;
  pb.horizon = m.at("horizon").get<int>();
  read_vec(m.at("q_diag"), pb.q_diag);
  read_vec(m.at("r_diag"), pb.r_diag);
  pb.barrier_delta = m.at("barrier_delta").get<double>();
  pb.barrier_weight = m.at("barrier_weight").get<double>();
  pb.max_iterations = m.at("max_iterations").get<int>();
  pb.cost_tolerance = m.at("cost_tolerance").get<double>();
  c.mpc.reference_speed = m.at("reference_speed").get<double>();
  c.mpc.settle_time = m.at("settle_time").get<double>();

  const auto& k = j.at("ik");
  c.ik.max_iterations = k.at("max_iterations").get<int>();
  c.ik.tolerance = k.at("tolerance").get<double>();
  c.ik.load_tolerance = k.at("load_tolerance").get<double>();
  c.ik.retry_mid_range = k.at("retry_mid_range").get<bool>();

  const auto& sim = j.at("simulation");
  c.leader = sim.at("leader").get<std::size_t>();
  c.step_budget = sim.at("step_budget").get<std::size_t>();
  c.n_d = sim.at("n_d").get<std::size_t>();
  c.seed = sim.at("seed").get<std::uint64_t>();
  return c;
}

}  // namespace

ordered_json config_to_json(const SimulationConfig& c) {
  const auto& arm = c.robot.arm;
  ordered_json origins = ordered_json::array();
  ordered_json axes = ordered_json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    origins.push_back(vec(arm.origins[i]));
    axes.push_back(vec(arm.axes[i]));
  }
  const auto& pb = c.mpc.problem;
  return ordered_json{
      {"robot",
       {{"v_max", c.robot.v_max},
        {"omega_max", c.robot.omega_max},
        {"rho_l", c.robot.rho_l},
        {"gamma", c.robot.gamma},
        {"dt", c.robot.dt},
        {"mount_offset", vec(c.robot.mount_offset)}}},
      {"arm",
       {{"origins", origins},
        {"axes", axes},
        {"tool", vec(arm.tool)},
        {"lower", vec(arm.limits.lo)},
        {"upper", vec(arm.limits.hi)},
        {"rate", vec(arm.limits.rate)},
        {"horizontal_mask", vec(arm.horizontal_mask)},
        {"horizontal_sum", arm.horizontal_sum}}},
      {"png", {{"navigation_constant", c.navigation_constant}, {"v_cruise", c.v_cruise}}},
      {"sampling",
       {{"count", c.sampling.count}, {"objective", objective_name(c.sampling.objective)}}},
      {"mpc",
       {{"horizon", pb.horizon},
        {"q_diag", vec(pb.q_diag)},
        {"r_diag", vec(pb.r_diag)},
        {"barrier_delta", pb.barrier_delta},
        {"barrier_weight", pb.barrier_weight},
        {"max_iterations", pb.max_iterations},
        {"cost_tolerance", pb.cost_tolerance},
        {"reference_speed", c.mpc.reference_speed},
        {"settle_time", c.mpc.settle_time}}},
      {"ik",
       {{"max_iterations", c.ik.max_iterations},
        {"tolerance", c.ik.tolerance},
        {"load_tolerance", c.ik.load_tolerance},
        {"retry_mid_range", c.ik.retry_mid_range}}},
      {"simulation",
       {{"leader", c.leader},
        {"step_budget", c.step_budget},
        {"n_d", c.n_d},
        {"seed", c.seed}}},
  };
}

SimulationConfig config_from_json(const json& overrides) {
  json merged = json(config_to_json(SimulationConfig{}));
  merge_checked(merged, overrides, "");
  SimulationConfig c;
  try {
    c = parse_full(merged);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  const bool rho_given = overrides.contains("robot") && overrides["robot"].contains("rho_l");
  if (!rho_given) c.robot.rho_l = c.robot.arm.reach();
  try {
    validate_chain(c.robot.arm);
    validate_simulation_config(c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFileError(path + ": cannot open config file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  try {
    return config_from_json(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string config_hash(const SimulationConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : config_to_json(cfg).dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cotransport
