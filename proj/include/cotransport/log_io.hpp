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

#include <stdexcept>
#include <string>
#include <vector>

#include "cotransport/sim_log.hpp"

namespace cotransport {

// I/O or parse failure. path() names the offending file.
class LogIoError : public std::runtime_error {
 public:
  LogIoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Column order of the per-run CSV.
const std::vector<std::string>& log_csv_columns();

// Sidecar metadata path for a CSV path: "<path>.meta.json".
std::string log_meta_path(const std::string& csv_path);

void write_log_csv(const SimulationLog& log, std::ostream& out);

// Writes the CSV and its metadata sidecar.
void write_log_csv(const SimulationLog& log, const std::string& path);

SimulationLog read_log_csv(std::istream& in, const std::string& name = "<stream>");

// Reads the CSV and, if present, its sidecar.
SimulationLog read_log_csv(const std::string& path);

}  // namespace cotransport
