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

#include "cotransport/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cotransport/polyline.hpp"

namespace cotransport {

double tracking_error(const Point3& ee, const Trajectory3D& traj) {
  return (ee - nearest_on_trajectory(ee.head<2>(), traj)).norm();
}

std::vector<double> load_length_series(const SimulationLog& log) {
  std::vector<double> out;
  out.reserve(log.records.size());
  for (const auto& r : log.records) out.push_back((r.robots[0].ee - r.robots[1].ee).norm());
  return out;
}

std::array<std::vector<double>, 2> tracking_error_series(
    const SimulationLog& log, const std::array<Trajectory3D, 2>& trajectories) {
  std::array<std::vector<double>, 2> out;
  for (std::size_t a = 0; a < 2; ++a) {
    out[a].reserve(log.records.size());
    for (const auto& r : log.records) {
      out[a].push_back(tracking_error(r.robots[a].ee, trajectories[a]));
    }
  }
  return out;
}

MetricsSummary summarize(const SimulationLog& log) {
  MetricsSummary s;
  s.steps = log.records.size();
  s.completed = log.completed;
  if (log.records.empty()) return s;
  const std::size_t follower = 1 - log.leader;
  std::size_t converged = 0;
  double dev_sum = 0.0;
  for (const auto& r : log.records) {
    const double dev = std::abs(r.load_len - log.load_length);
    s.max_load_deviation = std::max(s.max_load_deviation, dev);
    dev_sum += dev;
    if (r.robots[follower].ik_converged) {
      ++converged;
      s.max_load_deviation_converged = std::max(s.max_load_deviation_converged, dev);
    }
    for (std::size_t a = 0; a < 2; ++a) s.mean_tracking_error[a] += r.err[a];
  }
  const auto n = static_cast<double>(log.records.size());
  s.mean_load_deviation = dev_sum / n;
  for (auto& e : s.mean_tracking_error) e /= n;
  s.duration = log.records.back().t - log.records.front().t;
  s.follower_convergence_rate = static_cast<double>(converged) / n;
  return s;
}

}  // namespace cotransport
