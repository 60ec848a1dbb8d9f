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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "cotransport/prm.hpp"
#include "cotransport/world.hpp"

namespace cotransport {
namespace {

World2D box_world() {
  World2D w;
  w.bounds = {-3.0, -3.0, 3.0, 3.0};
  ConvexPolygon wall;
  wall.vertices = {{-0.5, -2.0}, {0.5, -2.0}, {0.5, 1.5}, {-0.5, 1.5}};
  w.obstacles.push_back(wall);
  ConvexPolygon tri;
  tri.vertices = {{1.5, 1.0}, {2.5, 1.0}, {2.0, 2.0}};
  w.obstacles.push_back(tri);
  return validated(w);
}

// Crossing-number test; boundary handling is irrelevant for random points.
bool ray_cast_inside(const Point2D& p, const std::vector<Point2D>& v) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y() > p.y()) != (v[j].y() > p.y()) &&
        p.x() < (v[j].x() - v[i].x()) * (p.y() - v[i].y()) / (v[j].y() - v[i].y()) + v[i].x()) {
      inside = !inside;
    }
  }
  return inside;
}

double point_segment(const Point2D& p, const Point2D& a, const Point2D& b) {
  const Point2D d = b - a;
  const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

double point_polygon(const Point2D& p, const std::vector<Point2D>& v) {
  if (ray_cast_inside(p, v)) return 0.0;
  double best = INFINITY;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, point_segment(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

// Minimum obstacle distance over points sampled along a segment.
double dense_clearance(const Point2D& a, const Point2D& b, const World2D& w, double spacing) {
  const int n = std::max(1, static_cast<int>(std::ceil((b - a).norm() / spacing)));
  double best = INFINITY;
  for (int k = 0; k <= n; ++k) {
    const Point2D p = a + (b - a) * (static_cast<double>(k) / n);
    for (const auto& o : w.obstacles) best = std::min(best, point_polygon(p, o.vertices));
  }
  return best;
}

TEST(World, PointInPolygonMatchesRayCasting) {
  const auto w = box_world();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 20000; ++i) {
    const Point2D p(u(rng), u(rng));
    for (const auto& o : w.obstacles) {
      EXPECT_EQ(point_in_polygon(p, o), ray_cast_inside(p, o.vertices));
    }
  }
}

TEST(World, SegmentDistanceMatchesDenseSampling) {
  const auto w = box_world();
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const Point2D a(u(rng), u(rng)), b(u(rng), u(rng));
    for (const auto& o : w.obstacles) {
      World2D single;
      single.bounds = w.bounds;
      single.obstacles = {o};
      const double exact = segment_polygon_distance(a, b, o);
      const double dense = dense_clearance(a, b, single, 1e-3);
      EXPECT_LE(exact, dense + 1e-12);
      EXPECT_GE(exact, dense - 1e-3);
    }
  }
}

TEST(World, FileRoundTripAndOrientation) {
  std::istringstream in(
      "# demo\ncotransport-world 1\nbounds 0 0 4 4\nobstacle 3\n1 1\n1 2\n2 1\n");
  const auto w = read_world(in);
  ASSERT_EQ(w.obstacles.size(), 1u);
  // Clockwise input is reordered counter-clockwise.
  const auto& v = w.obstacles[0].vertices;
  const double area2 = (v[1] - v[0]).x() * (v[2] - v[0]).y() - (v[1] - v[0]).y() * (v[2] - v[0]).x();
  EXPECT_GT(area2, 0.0);
  std::stringstream io;
  write_world(io, w);
  const auto back = read_world(io);
  EXPECT_EQ(back.obstacles[0].vertices, v);
  EXPECT_EQ(back.bounds.xmax, 4.0);
}

TEST(World, RejectsMalformedFiles) {
  for (const char* text : {"", "cotransport-world 2\nbounds 0 0 1 1\n",
                           "cotransport-world 1\n",
                           "cotransport-world 1\nbounds 0 0 4 4\nobstacle 4\n1 1\n3 1\n2 1.5\n2 3\n",
                           "cotransport-world 1\nbounds 0 0 4 4\nobstacle 3\n1 1\n2 1\n",
                           "cotransport-world 1\nbounds 0 0 4 4\nwall 1\n",
                           "cotransport-world 1\nbounds 0 0 4 4\nobstacle 3\n1 1\n9 1\n1 2\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(read_world(in), WorldFormatError) << text;
  }
}

TEST(Prm, SamplesAreFreeAndReproducible) {
  const auto w = box_world();
  const auto a = sample_free(w, 300, 9, 0.2);
  const auto b = sample_free(w, 300, 9, 0.2);
  ASSERT_EQ(a.size(), 300u);
  EXPECT_EQ(a, b);
  for (const auto& p : a) {
    EXPECT_TRUE(w.bounds.contains(p));
    for (const auto& o : w.obstacles) EXPECT_GT(point_polygon(p, o.vertices), 0.2);
  }
  EXPECT_NE(a, sample_free(w, 300, 10, 0.2));
}

TEST(Prm, RoadmapEdgesAreNearestNeighbours) {
  World2D empty;
  empty.bounds = {0, 0, 1, 1};
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const auto samples = sample_free(empty, 40, rng());
    const std::size_t c = 1 + trial % 6;
    const auto rm = build_roadmap(empty, samples, c, {0.0, 0.0}, {1.0, 1.0});
    const std::size_t n = rm.vertices.size();
    std::set<std::pair<std::size_t, std::size_t>> expected;
    for (std::size_t u = 0; u < n; ++u) {
      std::vector<std::pair<double, std::size_t>> d;
      for (std::size_t v = 0; v < n; ++v) {
        if (v != u) d.emplace_back((rm.vertices[u] - rm.vertices[v]).squaredNorm(), v);
      }
      std::sort(d.begin(), d.end());
      for (std::size_t k = 0; k < c; ++k) {
        expected.emplace(std::min(u, d[k].second), std::max(u, d[k].second));
      }
    }
    EXPECT_EQ(rm.edge_count(), expected.size());
    for (const auto& [u, v] : expected) EXPECT_TRUE(rm.has_edge(u, v));
    for (std::size_t u = 0; u < n; ++u) {
      for (const auto& e : rm.adjacency[u]) {
        EXPECT_DOUBLE_EQ(e.weight, (rm.vertices[u] - rm.vertices[e.to]).norm());
      }
    }
  }
}

TEST(Prm, EdgesAvoidObstacles) {
  const auto w = box_world();
  const auto samples = sample_free(w, 150, 4, 0.1);
  const auto rm = build_roadmap(w, samples, 8, {-2.5, -2.5}, {2.5, 2.5}, 0.1);
  for (std::size_t u = 0; u < rm.vertices.size(); ++u) {
    for (const auto& e : rm.adjacency[u]) {
      EXPECT_GT(dense_clearance(rm.vertices[u], rm.vertices[e.to], w, 1e-3), 0.1 - 1e-9);
    }
  }
}

// Exhaustive simple-path enumeration.
double brute_force_shortest(const Roadmap& rm, std::size_t s, std::size_t g) {
  double best = INFINITY;
  std::vector<bool> seen(rm.vertices.size(), false);
  std::function<void(std::size_t, double)> dfs = [&](std::size_t u, double len) {
    if (u == g) {
      best = std::min(best, len);
      return;
    }
    seen[u] = true;
    for (const auto& e : rm.adjacency[u]) {
      if (!seen[e.to]) dfs(e.to, len + e.weight);
    }
    seen[u] = false;
  };
  dfs(s, 0.0);
  return best;
}

TEST(Prm, DijkstraMatchesBruteForce) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int connected = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 9;
    Roadmap rm;
    for (std::size_t i = 0; i < n; ++i) rm.vertices.emplace_back(u(rng), u(rng));
    rm.adjacency.assign(n, {});
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (u(rng) < 0.4) {
          const double w = (rm.vertices[a] - rm.vertices[b]).norm();
          rm.adjacency[a].push_back({b, w});
          rm.adjacency[b].push_back({a, w});
        }
      }
    }
    const std::size_t s = rng() % n, g = rng() % n;
    const double oracle = brute_force_shortest(rm, s, g);
    if (std::isinf(oracle)) {
      EXPECT_THROW(shortest_path(rm, s, g), NoPathError);
      continue;
    }
    ++connected;
    const auto path = shortest_path(rm, s, g);
    EXPECT_NEAR(path.length, oracle, 1e-12);
    ASSERT_FALSE(path.indices.empty());
    EXPECT_EQ(path.indices.front(), s);
    EXPECT_EQ(path.indices.back(), g);
    double len = 0.0;
    for (std::size_t i = 1; i < path.indices.size(); ++i) {
      ASSERT_TRUE(rm.has_edge(path.indices[i - 1], path.indices[i]));
      len += (rm.vertices[path.indices[i]] - rm.vertices[path.indices[i - 1]]).norm();
    }
    EXPECT_NEAR(len, path.length, 1e-12);
  }
  EXPECT_GT(connected, 30);
}

TEST(Prm, EqualLengthPathsPreferSmallerIndices) {
  Roadmap rm;
  rm.vertices = {{0, 0}, {2, 0}, {1, 1}, {1, -1}};
  rm.adjacency.assign(4, {});
  const double w = std::sqrt(2.0);
  for (auto [a, b] : {std::pair{0, 3}, {3, 1}, {0, 2}, {2, 1}}) {
    rm.adjacency[a].push_back({static_cast<std::size_t>(b), w});
    rm.adjacency[b].push_back({static_cast<std::size_t>(a), w});
  }
  const auto p = shortest_path(rm, 0, 1);
  EXPECT_EQ(p.indices, (std::vector<std::size_t>{0, 2, 1}));
}

TEST(Prm, PlannedPathsAreCollisionFreeAndReproducible) {
  const auto w = box_world();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    PrmParams params;
    params.seed = seed;
    params.robot_radius = 0.15;
    const Point2D start(-2.0, -2.5), goal(2.0, 0.0);
    const auto p = plan_path(w, start, goal, params);
    const auto q = plan_path(w, start, goal, params);
    EXPECT_EQ(p.indices, q.indices);
    EXPECT_EQ(p.points, q.points);
    EXPECT_EQ(p.points.front(), start);
    EXPECT_EQ(p.points.back(), goal);
    for (std::size_t i = 1; i < p.points.size(); ++i) {
      EXPECT_GT(dense_clearance(p.points[i - 1], p.points[i], w, 1e-3), 0.15 - 1e-9);
    }
    const auto samples = sample_free(w, params.samples, seed, params.robot_radius);
    const auto r1 = build_roadmap(w, samples, params.neighbors, start, goal, 0.15);
    const auto r2 = build_roadmap(w, samples, params.neighbors, start, goal, 0.15);
    ASSERT_EQ(r1.adjacency.size(), r2.adjacency.size());
    for (std::size_t u = 0; u < r1.adjacency.size(); ++u) {
      ASSERT_EQ(r1.adjacency[u].size(), r2.adjacency[u].size());
      for (std::size_t k = 0; k < r1.adjacency[u].size(); ++k) {
        EXPECT_EQ(r1.adjacency[u][k].to, r2.adjacency[u][k].to);
        EXPECT_EQ(r1.adjacency[u][k].weight, r2.adjacency[u][k].weight);
      }
    }
  }
}

TEST(Prm, ErrorsForBlockedQueries) {
  const auto w = box_world();
  PrmParams params;
  EXPECT_THROW(plan_path(w, {0.0, 0.0}, {2.0, 0.0}, params), PlanningError);
  World2D split;
  split.bounds = {0, 0, 4, 2};
  ConvexPolygon wall;
  wall.vertices = {{1.8, -1.0}, {2.2, -1.0}, {2.2, 3.0}, {1.8, 3.0}};
  split.obstacles = {wall};
  params.robot_radius = 0.1;
  EXPECT_THROW(plan_path(split, {0.5, 1.0}, {3.5, 1.0}, params), NoPathError);
}

TEST(Trajectories, StraightPathKeepsLoadLength) {
  const std::vector<Point2D> path{{0, 0}, {1, 1}, {3, 3}};
  const auto t = path_to_trajectories(path, 0.65, 0.2, 30);
  ASSERT_EQ(t.left.size(), 30u);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_NEAR((t.left[i] - t.right[i]).norm(), 0.65, 1e-9);
    EXPECT_EQ(t.left[i].z(), 0.2);
    // Left of the direction of travel.
    EXPECT_GT(t.left[i].y() - t.left[i].x(), 0.0);
  }
}

TEST(Trajectories, CornerNormalsAreAveraged) {
  const std::vector<Point2D> path{{0, 0}, {1, 0}, {1, 1}};
  const auto t = path_to_trajectories(path, 0.65, 0.2, 21);
  // Waypoint 10 sits exactly on the corner.
  const Point2D mid = 0.5 * (t.left[10].head<2>() + t.right[10].head<2>());
  EXPECT_LT((mid - Point2D(1, 0)).norm(), 1e-12);
  const Point2D n = (t.left[10].head<2>() - t.right[10].head<2>()).normalized();
  EXPECT_LT((n - Point2D(-1, 1).normalized()).norm(), 1e-12);
  for (std::size_t i = 0; i < 21; ++i) {
    EXPECT_NEAR((t.left[i] - t.right[i]).norm(), 0.65, 0.0065);
  }
  EXPECT_THROW(path_to_trajectories(std::vector<Point2D>{{0, 0}, {0, 0}}, 0.65, 0.2, 5),
               std::invalid_argument);
}

TEST(Trajectories, OffsetSidesAreCheckedAgainstObstacles) {
  World2D w;
  w.bounds = {-5, -5, 5, 5};
  ConvexPolygon block;
  block.vertices = {{0.0, 0.2}, {1.0, 0.2}, {1.0, 1.0}, {0.0, 1.0}};
  w.obstacles = {validated(World2D{w.bounds, {block}}).obstacles[0]};
  const std::vector<Point2D> path{{-2, 0}, {2, 0}};
  EXPECT_THROW(path_to_trajectories(path, 0.65, 0.2, 20, &w), PlanningError);
  EXPECT_NO_THROW(path_to_trajectories(path, 0.3, 0.2, 20, &w));
}

}  // namespace
}  // namespace cotransport
