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

#include <ostream>

namespace cotransport {

// Process exit codes of the batch CLI.
enum class ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kFileError = 3,
  kInvalidInput = 4,
  kPlanningFailed = 5,
  kNoPath = 6,
  kIncomplete = 7,
};

// Subcommands: run, plan, metrics. Failures print one line to err:
//   error code=<name> exit=<n> message="<text>"
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cotransport
