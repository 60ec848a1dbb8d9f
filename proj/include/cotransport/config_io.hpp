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

#include <json.hpp>

#include "cotransport/simulation.hpp"

namespace cotransport {

// Invalid config content: unknown key, wrong type, or out-of-range value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config file could not be opened.
class ConfigFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Full config as JSON, every field present. Key order is fixed.
nlohmann::ordered_json config_to_json(const SimulationConfig& cfg);

// Overrides defaults with the given JSON. Keys must exist in the default
// document. robot.rho_l follows the arm reach unless given explicitly.
SimulationConfig config_from_json(const nlohmann::json& overrides);

SimulationConfig load_config(const std::string& path);

// 16 hex digits: FNV-1a 64 of the compact config_to_json dump.
std::string config_hash(const SimulationConfig& cfg);

}  // namespace cotransport
