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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cotransport/types.hpp"
#include "cotransport/world.hpp"

namespace cotransport {

// Free-space sampling or offset-trajectory checks failed.
class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Start and goal are not connected in the roadmap.
class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RoadmapEdge {
  std::size_t to = 0;
  double weight = 0.0;
};

// Undirected roadmap. Edge weights are Euclidean lengths.
struct Roadmap {
  std::vector<Point2D> vertices;
  std::vector<std::vector<RoadmapEdge>> adjacency;

  std::size_t edge_count() const;
  bool has_edge(std::size_t u, std::size_t v) const;
};

struct PrmParams {
  std::size_t samples = 200;
  std::size_t neighbors = 10;
  // Obstacles are grown by this radius before planning.
  double robot_radius = 0.22;
  std::uint64_t seed = 1;
  // Rejection budget is attempt_factor * n draws.
  std::size_t attempt_factor = 1000;
};

// Rejection-samples n points in bounds and at least `clearance` away from
// every obstacle. Deterministic per seed. Throws PlanningError when the
// attempt budget runs out.
std::vector<Point2D> sample_free(const World2D& world, std::size_t n,
                                 std::uint64_t rng_seed, double clearance = 0.0,
                                 std::size_t attempt_factor = 1000);

// Vertex 0 is q_init, vertex 1 is q_goal, followed by the samples. Each
// vertex considers its c nearest neighbours (ties by index) and links those
// reachable by a collision-free straight segment.
Roadmap build_roadmap(const World2D& world, std::span<const Point2D> samples,
                      std::size_t c, const Point2D& q_init,
                      const Point2D& q_goal, double clearance = 0.0);

struct RoadmapPath {
  std::vector<std::size_t> indices;
  std::vector<Point2D> points;
  double length = 0.0;
};

// Dijkstra. Equal-length paths resolve to the lexicographically smallest
// vertex-index sequence. Throws NoPathError when disconnected.
RoadmapPath shortest_path(const Roadmap& roadmap, std::size_t start,
                          std::size_t goal);

// Same, locating the endpoints among the roadmap vertices by exact match.
RoadmapPath shortest_path(const Roadmap& roadmap, const Point2D& q_init,
                          const Point2D& q_goal);

// sample_free + build_roadmap + shortest_path with obstacles grown by
// params.robot_radius.
RoadmapPath plan_path(const World2D& world, const Point2D& q_init,
                      const Point2D& q_goal, const PrmParams& params);

struct TrajectoryPair {
  Trajectory3D left;   // leader side, +normal
  Trajectory3D right;  // follower side, -normal
};

// Resamples the path to n_d arc-length-uniform points and offsets them by
// +/- load_length / 2 along the local left normal, at constant height. At a
// sample lying on a path corner the two adjacent normals are averaged. When
// `world` is given, an offset polyline touching an obstacle raises
// PlanningError naming the side.
TrajectoryPair path_to_trajectories(std::span<const Point2D> path,
                                    double load_length, double carry_height,
                                    std::size_t n_d,
                                    const World2D* world = nullptr);

}  // namespace cotransport
