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

#include "cotransport/log_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace cotransport {

namespace {

constexpr std::size_t kColumns = 31;

void put(std::string& line, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  if (!line.empty()) line += ',';
  line += buf;
}

void put(std::string& line, std::size_t v) {
  if (!line.empty()) line += ',';
  line += std::to_string(v);
}

double parse_double(const std::string& s, const std::string& name, std::size_t row) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || (errno == ERANGE && std::isinf(v))) {
    throw LogIoError(name, "row " + std::to_string(row) + ": bad number '" + s + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& s, const std::string& name, std::size_t row) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw LogIoError(name, "row " + std::to_string(row) + ": bad integer '" + s + "'");
  }
  return std::stoull(s);
}

nlohmann::ordered_json meta_json(const SimulationLog& log) {
  std::vector<std::size_t> failed;
  std::size_t converged = 0;
  const std::size_t follower = 1 - log.leader;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    if (log.records[i].robots[follower].ik_converged) {
      ++converged;
    } else {
      failed.push_back(i);
    }
  }
  return nlohmann::ordered_json{
      {"method", log.method},
      {"seed", log.seed},
      {"config_hash", log.config_hash},
      {"completed", log.completed},
      {"leader", log.leader},
      {"n_d", log.n_d},
      {"load_length", log.load_length},
      {"steps", log.records.size()},
      {"follower_converged_steps", converged},
      {"follower_failed_rows", failed},
  };
}

}  // namespace

const std::vector<std::string>& log_csv_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"t"};
    for (int a = 1; a <= 2; ++a) {
      const std::string s = std::to_string(a);
      for (const char* f : {"x", "y", "th", "v", "w"}) c.push_back(f + s);
      for (int j = 1; j <= 4; ++j) c.push_back("b" + s + "_" + std::to_string(j));
      for (const char* f : {"_x", "_y", "_z"}) c.push_back("ee" + s + f);
      c.push_back("stop" + s);
    }
    for (const char* f : {"p", "load_len", "err1", "err2"}) c.emplace_back(f);
    return c;
  }();
  return cols;
}

std::string log_meta_path(const std::string& csv_path) { return csv_path + ".meta.json"; }

void write_log_csv(const SimulationLog& log, std::ostream& out) {
  std::string line;
  for (const auto& c : log_csv_columns()) {
    if (!line.empty()) line += ',';
    line += c;
  }
  out << line << '\n';
  for (const auto& r : log.records) {
    line.clear();
    put(line, r.t);
    for (const auto& s : r.robots) {
      put(line, s.pose.x);
      put(line, s.pose.y);
      put(line, s.pose.theta);
      put(line, s.cmd.v);
      put(line, s.cmd.omega);
      for (int j = 0; j < 4; ++j) put(line, s.beta[j]);
      for (int j = 0; j < 3; ++j) put(line, s.ee[j]);
      put(line, std::size_t{s.stop ? 1u : 0u});
    }
    put(line, r.p);
    put(line, r.load_len);
    put(line, r.err[0]);
    put(line, r.err[1]);
    out << line << '\n';
  }
}

void write_log_csv(const SimulationLog& log, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw LogIoError(path, "cannot create directory: " + ec.message());
  }
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LogIoError(path, "cannot open for writing");
    write_log_csv(log, out);
    if (!out.flush()) throw LogIoError(path, "write failed");
  }
  const std::string meta = log_meta_path(path);
  std::ofstream out(meta, std::ios::binary);
  if (!out) throw LogIoError(meta, "cannot open for writing");
  out << meta_json(log).dump(2) << '\n';
  if (!out.flush()) throw LogIoError(meta, "write failed");
}

SimulationLog read_log_csv(std::istream& in, const std::string& name) {
  SimulationLog log;
  std::string line;
  if (!std::getline(in, line)) throw LogIoError(name, "empty file");
  std::string expected;
  for (const auto& c : log_csv_columns()) expected += (expected.empty() ? "" : ",") + c;
  if (line != expected) throw LogIoError(name, "unexpected header");
  std::vector<std::string> f;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    f.clear();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != kColumns) {
      throw LogIoError(name, "row " + std::to_string(row) + ": expected " +
                                 std::to_string(kColumns) + " columns, got " +
                                 std::to_string(f.size()));
    }
    LogRecord r;
    std::size_t i = 0;
    auto num = [&] { return parse_double(f[i++], name, row); };
    r.t = num();
    for (auto& s : r.robots) {
      s.pose.x = num();
      s.pose.y = num();
      s.pose.theta = num();
      s.cmd.v = num();
      s.cmd.omega = num();
      for (int j = 0; j < 4; ++j) s.beta[j] = num();
      for (int j = 0; j < 3; ++j) s.ee[j] = num();
      const std::size_t stop = parse_count(f[i++], name, row);
      if (stop > 1) throw LogIoError(name, "row " + std::to_string(row) + ": bad stop flag");
      s.stop = stop == 1;
    }
    r.p = parse_count(f[i++], name, row);
    r.load_len = num();
    r.err[0] = num();
    r.err[1] = num();
    log.records.push_back(r);
  }
  if (log.records.empty()) throw LogIoError(name, "no data rows");
  return log;
}

SimulationLog read_log_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LogIoError(path, "cannot open for reading");
  SimulationLog log = read_log_csv(in, path);
  const std::string meta_path = log_meta_path(path);
  std::ifstream meta_in(meta_path);
  if (!meta_in) return log;
  try {
    const auto meta = nlohmann::json::parse(meta_in);
    log.method = meta.at("method").get<std::string>();
    log.seed = meta.at("seed").get<std::uint64_t>();
    log.config_hash = meta.at("config_hash").get<std::string>();
    log.completed = meta.at("completed").get<bool>();
    log.leader = meta.at("leader").get<std::size_t>();
    log.n_d = meta.at("n_d").get<std::size_t>();
    log.load_length = meta.at("load_length").get<double>();
    if (log.leader > 1) throw LogIoError(meta_path, "leader must be 0 or 1");
    for (const auto row : meta.at("follower_failed_rows").get<std::vector<std::size_t>>()) {
      if (row >= log.records.size()) throw LogIoError(meta_path, "failed row out of range");
      log.records[row].robots[1 - log.leader].ik_converged = false;
    }
  } catch (const nlohmann::json::exception& e) {
    throw LogIoError(meta_path, e.what());
  }
  return log;
}

}  // namespace cotransport
