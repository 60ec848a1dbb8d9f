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

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cotransport/types.hpp"

namespace cotransport {

struct Bounds2D {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  bool contains(const Point2D& p) const {
    return p.x() >= xmin && p.x() <= xmax && p.y() >= ymin && p.y() <= ymax;
  }
};

// Convex polygon, vertices counter-clockwise.
struct ConvexPolygon {
  std::vector<Point2D> vertices;
};

// Static planar world: a bounding rectangle and convex polygonal obstacles.
struct World2D {
  Bounds2D bounds;
  std::vector<ConvexPolygon> obstacles;
};

// Raised for malformed worlds and world files.
class WorldFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks the world invariants and reorders clockwise polygons to
// counter-clockwise. Throws WorldFormatError when a polygon has fewer than
// three non-collinear vertices, is not convex, or leaves the bounds.
World2D validated(World2D world);

// Closed test: boundary points count as inside.
bool point_in_polygon(const Point2D& p, const ConvexPolygon& poly);

// Euclidean distance from segment ab to the polygon (0 when they touch).
double segment_polygon_distance(const Point2D& a, const Point2D& b,
                                const ConvexPolygon& poly);

// True iff segment ab comes within `clearance` of any obstacle. With zero
// clearance this is exact intersection with interior or boundary.
bool segment_collides(const Point2D& a, const Point2D& b, const World2D& world,
                      double clearance = 0.0);

// True iff p lies in bounds and farther than `clearance` from every obstacle.
bool point_free(const Point2D& p, const World2D& world, double clearance = 0.0);

// World file, version 1:
//
//   cotransport-world 1
//   # comment
//   bounds <xmin> <ymin> <xmax> <ymax>
//   obstacle <vertex count>
//   <x> <y>
//   ...
//
// Blank lines and lines starting with '#' are ignored.
World2D read_world(std::istream& in);
World2D load_world(const std::string& path);
void write_world(std::ostream& out, const World2D& world);

}  // namespace cotransport
