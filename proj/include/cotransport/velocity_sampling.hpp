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

#include <random>
#include <vector>

#include "cotransport/robot.hpp"
#include "cotransport/types.hpp"

namespace cotransport {

enum class SamplingObjective {
  // J = |d - rho_d|: land on the reachability ring.
  kRing,
  // J = d: nearest candidate pose to the target.
  kNearest,
};

struct SamplingOptions {
  std::size_t count = 500;
  SamplingObjective objective = SamplingObjective::kRing;
};

// Uniform samples over [-v_max, v_max] x [-omega_max, omega_max].
std::vector<VelocityCommand> sample_velocities(std::size_t count, double v_max,
                                               double omega_max,
                                               std::mt19937_64& rng);

// Objective value of one command: the candidate pose after dt is scored by
// its planar distance d to the target.
double sampling_objective(const Pose2D& pose, const VelocityCommand& cmd,
                          const Point2D& target, double rho_d, double dt,
                          SamplingObjective objective);

// Draws options.count commands, rolls each through the arc model for cfg.dt
// and returns the one minimising the objective (first index wins ties).
VelocityCommand velocity_sampling_step(const Pose2D& pose, const Point2D& target,
                                       double rho_d, const RobotConfig& cfg,
                                       std::mt19937_64& rng,
                                       const SamplingOptions& options = {});

}  // namespace cotransport
