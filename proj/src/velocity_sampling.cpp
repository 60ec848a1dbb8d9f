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

#include "cotransport/velocity_sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cotransport/diff_drive.hpp"

namespace cotransport {

std::vector<VelocityCommand> sample_velocities(std::size_t count, double v_max,
                                               double omega_max,
                                               std::mt19937_64& rng) {
  if (count == 0) throw std::invalid_argument("sample_velocities: count must be >= 1");
  std::uniform_real_distribution<double> uv(-v_max, v_max);
  std::uniform_real_distribution<double> uw(-omega_max, omega_max);
  std::vector<VelocityCommand> out(count);
  for (auto& c : out) {
    c.v = uv(rng);
    c.omega = uw(rng);
  }
  return out;
}

double sampling_objective(const Pose2D& pose, const VelocityCommand& cmd,
                          const Point2D& target, double rho_d, double dt,
                          SamplingObjective objective) {
  const Pose2D next = step_pose(pose, cmd, dt);
  const double d = (target - next.position()).norm();
  return objective == SamplingObjective::kRing ? std::abs(d - rho_d) : d;
}

VelocityCommand velocity_sampling_step(const Pose2D& pose, const Point2D& target,
                                       double rho_d, const RobotConfig& cfg,
                                       std::mt19937_64& rng,
                                       const SamplingOptions& options) {
  const auto samples = sample_velocities(options.count, cfg.v_max, cfg.omega_max, rng);
  VelocityCommand best = samples.front();
  double best_j = std::numeric_limits<double>::infinity();
  for (const auto& c : samples) {
    const double j = sampling_objective(pose, c, target, rho_d, cfg.dt, options.objective);
    if (j < best_j) {
      best_j = j;
      best = c;
    }
  }
  return best;
}

}  // namespace cotransport
