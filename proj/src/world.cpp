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

#include "cotransport/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace cotransport {
namespace {

double cross(const Point2D& o, const Point2D& a, const Point2D& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool on_segment(const Point2D& a, const Point2D& b, const Point2D& p) {
  return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) &&
         std::min(a.y(), b.y()) <= p.y() && p.y() <= std::max(a.y(), b.y());
}

bool segments_intersect(const Point2D& p1, const Point2D& p2,
                        const Point2D& q1, const Point2D& q2) {
  const int d1 = sign(cross(q1, q2, p1));
  const int d2 = sign(cross(q1, q2, p2));
  const int d3 = sign(cross(p1, p2, q1));
  const int d4 = sign(cross(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

double point_segment_distance(const Point2D& p, const Point2D& a,
                              const Point2D& b) {
  const Point2D ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t =
      len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (p - (a + t * ab)).norm();
}

double signed_area(const std::vector<Point2D>& v) {
  double area = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    area += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * area;
}

}  // namespace

World2D validated(World2D world) {
  const auto& b = world.bounds;
  if (!(b.xmin < b.xmax && b.ymin < b.ymax)) {
    throw WorldFormatError("world bounds are empty");
  }
  for (std::size_t k = 0; k < world.obstacles.size(); ++k) {
    auto& v = world.obstacles[k].vertices;
    const std::string tag = "obstacle " + std::to_string(k);
    if (v.size() < 3) throw WorldFormatError(tag + ": fewer than 3 vertices");
    for (const auto& p : v) {
      if (!p.allFinite()) throw WorldFormatError(tag + ": non-finite vertex");
      if (!b.contains(p)) throw WorldFormatError(tag + ": vertex outside bounds");
    }
    const double area = signed_area(v);
    if (std::abs(area) <= 1e-12) {
      throw WorldFormatError(tag + ": vertices are collinear");
    }
    if (area < 0.0) std::reverse(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& p0 = v[i];
      const auto& p1 = v[(i + 1) % v.size()];
      const auto& p2 = v[(i + 2) % v.size()];
      if (cross(p0, p1, p2) < 0.0) throw WorldFormatError(tag + ": not convex");
    }
  }
  return world;
}

bool point_in_polygon(const Point2D& p, const ConvexPolygon& poly) {
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (cross(v[i], v[(i + 1) % v.size()], p) < 0.0) return false;
  }
  return true;
}

double segment_polygon_distance(const Point2D& a, const Point2D& b,
                                const ConvexPolygon& poly) {
  if (point_in_polygon(a, poly) || point_in_polygon(b, poly)) return 0.0;
  const auto& v = poly.vertices;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& q1 = v[i];
    const auto& q2 = v[(i + 1) % v.size()];
    if (segments_intersect(a, b, q1, q2)) return 0.0;
    best = std::min({best, point_segment_distance(a, q1, q2),
                     point_segment_distance(b, q1, q2),
                     point_segment_distance(q1, a, b),
                     point_segment_distance(q2, a, b)});
  }
  return best;
}

bool segment_collides(const Point2D& a, const Point2D& b, const World2D& world,
                      double clearance) {
  for (const auto& poly : world.obstacles) {
    const double d = segment_polygon_distance(a, b, poly);
    if (clearance > 0.0 ? d <= clearance : d == 0.0) return true;
  }
  return false;
}

bool point_free(const Point2D& p, const World2D& world, double clearance) {
  return world.bounds.contains(p) && !segment_collides(p, p, world, clearance);
}

World2D read_world(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) {
    throw WorldFormatError("world file line " + std::to_string(line_no) +
                           ": " + what);
  };

  if (!next_line(line)) fail("missing header");
  {
    std::istringstream hs(line);
    std::string magic;
    int version = 0;
    if (!(hs >> magic >> version) || magic != "cotransport-world") {
      fail("expected header 'cotransport-world 1'");
    }
    if (version != 1) fail("unsupported version " + std::to_string(version));
  }

  World2D world;
  bool have_bounds = false;
  while (next_line(line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "bounds") {
      auto& b = world.bounds;
      if (!(ls >> b.xmin >> b.ymin >> b.xmax >> b.ymax)) fail("bad bounds");
      have_bounds = true;
    } else if (key == "obstacle") {
      long count = 0;
      if (!(ls >> count) || count < 3) fail("bad obstacle vertex count");
      ConvexPolygon poly;
      for (long i = 0; i < count; ++i) {
        if (!next_line(line)) fail("truncated obstacle");
        std::istringstream vs(line);
        double x = 0.0;
        double y = 0.0;
        if (!(vs >> x >> y)) fail("bad vertex");
        poly.vertices.emplace_back(x, y);
      }
      world.obstacles.push_back(std::move(poly));
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_bounds) fail("missing bounds");
  return validated(std::move(world));
}

World2D load_world(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open world file '" + path + "'");
  try {
    return read_world(in);
  } catch (const WorldFormatError& e) {
    throw WorldFormatError(path + ": " + e.what());
  }
}

void write_world(std::ostream& out, const World2D& world) {
  out.precision(17);
  out << "cotransport-world 1\n";
  const auto& b = world.bounds;
  out << "bounds " << b.xmin << ' ' << b.ymin << ' ' << b.xmax << ' ' << b.ymax
      << '\n';
  for (const auto& poly : world.obstacles) {
    out << "obstacle " << poly.vertices.size() << '\n';
    for (const auto& v : poly.vertices) out << v.x() << ' ' << v.y() << '\n';
  }
}

}  // namespace cotransport
