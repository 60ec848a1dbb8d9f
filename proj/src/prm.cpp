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

#include "cotransport/prm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <string>

namespace cotransport {

std::size_t Roadmap::edge_count() const {
  std::size_t n = 0;
  for (const auto& adj : adjacency) n += adj.size();
  return n / 2;
}

bool Roadmap::has_edge(std::size_t u, std::size_t v) const {
  return std::any_of(adjacency[u].begin(), adjacency[u].end(),
                     [v](const RoadmapEdge& e) { return e.to == v; });
}

std::vector<Point2D> sample_free(const World2D& world, std::size_t n,
                                 std::uint64_t rng_seed, double clearance,
                                 std::size_t attempt_factor) {
  if (n == 0) throw std::invalid_argument("sample_free: n must be >= 1");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> ux(world.bounds.xmin, world.bounds.xmax);
  std::uniform_real_distribution<double> uy(world.bounds.ymin, world.bounds.ymax);
  std::vector<Point2D> out;
  out.reserve(n);
  const std::size_t budget = attempt_factor * n;
  for (std::size_t attempt = 0; attempt < budget && out.size() < n; ++attempt) {
    const double x = ux(rng);
    const double y = uy(rng);
    const Point2D p(x, y);
    if (point_free(p, world, clearance)) out.push_back(p);
  }
  if (out.size() < n) {
    throw PlanningError("sample_free: attempt budget of " +
                        std::to_string(budget) + " exhausted with " +
                        std::to_string(out.size()) + "/" + std::to_string(n) +
                        " free samples");
  }
  return out;
}

Roadmap build_roadmap(const World2D& world, std::span<const Point2D> samples,
                      std::size_t c, const Point2D& q_init,
                      const Point2D& q_goal, double clearance) {
  if (c == 0) throw std::invalid_argument("build_roadmap: c must be >= 1");
  Roadmap rm;
  rm.vertices.reserve(samples.size() + 2);
  rm.vertices.push_back(q_init);
  rm.vertices.push_back(q_goal);
  rm.vertices.insert(rm.vertices.end(), samples.begin(), samples.end());
  const std::size_t n = rm.vertices.size();
  rm.adjacency.assign(n, {});

  std::vector<std::size_t> order(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = (rm.vertices[i] - rm.vertices[u]).squaredNorm();
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return d2[a] < d2[b];
    });
    std::size_t taken = 0;
    for (std::size_t k = 0; k < n && taken < c; ++k) {
      const std::size_t v = order[k];
      if (v == u) continue;
      ++taken;
      if (rm.has_edge(u, v)) continue;
      if (segment_collides(rm.vertices[u], rm.vertices[v], world, clearance)) {
        continue;
      }
      const double w = (rm.vertices[u] - rm.vertices[v]).norm();
      rm.adjacency[u].push_back({v, w});
      rm.adjacency[v].push_back({u, w});
    }
  }
  return rm;
}

RoadmapPath shortest_path(const Roadmap& roadmap, std::size_t start,
                          std::size_t goal) {
  const std::size_t n = roadmap.vertices.size();
  if (start >= n || goal >= n) {
    throw std::out_of_range("shortest_path: endpoint is not a roadmap vertex");
  }
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> pred(n, kNone);
  std::vector<bool> done(n, false);

  auto path_to = [&](std::size_t v) {
    std::vector<std::size_t> p;
    for (std::size_t x = v; x != kNone; x = pred[x]) p.push_back(x);
    std::reverse(p.begin(), p.end());
    return p;
  };

  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[start] = 0.0;
  queue.emplace(0.0, start);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (done[u] || d > dist[u]) continue;
    done[u] = true;
    if (u == goal) break;
    for (const auto& e : roadmap.adjacency[u]) {
      if (done[e.to]) continue;
      const double nd = dist[u] + e.weight;
      bool better = nd < dist[e.to];
      if (!better && nd == dist[e.to]) {
        auto via_u = path_to(u);
        via_u.push_back(e.to);
        better = via_u < path_to(e.to);
      }
      if (better) {
        dist[e.to] = nd;
        pred[e.to] = u;
        queue.emplace(nd, e.to);
      }
    }
  }
  if (!std::isfinite(dist[goal])) {
    throw NoPathError("shortest_path: start and goal are disconnected");
  }
  RoadmapPath out;
  out.indices = path_to(goal);
  out.length = dist[goal];
  for (auto i : out.indices) out.points.push_back(roadmap.vertices[i]);
  return out;
}

RoadmapPath shortest_path(const Roadmap& roadmap, const Point2D& q_init,
                          const Point2D& q_goal) {
  auto find = [&](const Point2D& q) {
    const auto it = std::find(roadmap.vertices.begin(), roadmap.vertices.end(), q);
    if (it == roadmap.vertices.end()) {
      throw std::invalid_argument("shortest_path: endpoint is not a roadmap vertex");
    }
    return static_cast<std::size_t>(it - roadmap.vertices.begin());
  };
  return shortest_path(roadmap, find(q_init), find(q_goal));
}

RoadmapPath plan_path(const World2D& world, const Point2D& q_init,
                      const Point2D& q_goal, const PrmParams& params) {
  for (const auto* q : {&q_init, &q_goal}) {
    if (!point_free(*q, world, params.robot_radius)) {
      throw PlanningError("plan_path: start or goal is in collision");
    }
  }
  const auto samples = sample_free(world, params.samples, params.seed,
                                   params.robot_radius, params.attempt_factor);
  const auto roadmap = build_roadmap(world, samples, params.neighbors, q_init,
                                     q_goal, params.robot_radius);
  return shortest_path(roadmap, std::size_t{0}, std::size_t{1});
}

TrajectoryPair path_to_trajectories(std::span<const Point2D> path,
                                    double load_length, double carry_height,
                                    std::size_t n_d, const World2D* world) {
  if (n_d < 2) throw std::invalid_argument("path_to_trajectories: n_d < 2");
  if (!(load_length > 0.0)) {
    throw std::invalid_argument("path_to_trajectories: load length must be > 0");
  }
  std::vector<Point2D> pts;
  for (const auto& p : path) {
    if (pts.empty() || p != pts.back()) pts.push_back(p);
  }
  if (pts.size() < 2) {
    throw std::invalid_argument("path_to_trajectories: path has no length");
  }

  const std::size_t segs = pts.size() - 1;
  std::vector<double> cum(pts.size(), 0.0);
  std::vector<Point2D> normal(segs);
  for (std::size_t i = 0; i < segs; ++i) {
    const Point2D d = pts[i + 1] - pts[i];
    cum[i + 1] = cum[i] + d.norm();
    normal[i] = Point2D(-d.y(), d.x()) / d.norm();
  }
  const double total = cum.back();
  const double corner_tol = 1e-12 * total;

  std::vector<Point3> left;
  std::vector<Point3> right;
  std::size_t seg = 0;
  const double half = 0.5 * load_length;
  for (std::size_t k = 0; k < n_d; ++k) {
    const double s = k + 1 == n_d ? total : total * static_cast<double>(k) /
                                                static_cast<double>(n_d - 1);
    while (seg + 1 < segs && s > cum[seg + 1]) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double t = std::clamp((s - cum[seg]) / len, 0.0, 1.0);
    const Point2D c = k + 1 == n_d ? pts.back() : Point2D(pts[seg] + t * (pts[seg + 1] - pts[seg]));
    Point2D nrm = normal[seg];
    if (seg + 1 < segs && std::abs(s - cum[seg + 1]) <= corner_tol) {
      nrm = (normal[seg] + normal[seg + 1]).normalized();
    } else if (seg > 0 && std::abs(s - cum[seg]) <= corner_tol) {
      nrm = (normal[seg - 1] + normal[seg]).normalized();
    }
    const Point2D l = c + half * nrm;
    const Point2D r = c - half * nrm;
    left.emplace_back(l.x(), l.y(), carry_height);
    right.emplace_back(r.x(), r.y(), carry_height);
  }

  if (world != nullptr) {
    auto check = [&](const std::vector<Point3>& side, const char* name) {
      for (std::size_t i = 0; i + 1 < side.size(); ++i) {
        const Point2D a = side[i].head<2>();
        const Point2D b = side[i + 1].head<2>();
        if (!world->bounds.contains(a) || segment_collides(a, b, *world)) {
          throw PlanningError(std::string("path_to_trajectories: ") + name +
                              " trajectory intersects an obstacle near waypoint " +
                              std::to_string(i));
        }
      }
    };
    check(left, "left");
    check(right, "right");
  }
  return {Trajectory3D(std::move(left)), Trajectory3D(std::move(right))};
}

}  // namespace cotransport
