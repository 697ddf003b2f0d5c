// Copyright 2026 The graffmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "graffmap/geo/projection.hpp"

namespace graffmap::geo {

using Ring = std::vector<GeoPoint>;

struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

// Boundary tolerance for containment tests, in projected meters.
inline constexpr double kBoundaryToleranceM = 1e-6;

// A validated region boundary. Rings are stored open (the closing vertex is
// implicit). Each region carries its own local projection centered on the
// bounding-box centroid of its exterior ring; all metric work on the region
// happens in that frame.
class RegionPolygon {
 public:
  // Throws Error(kInvalidPolygon) when a ring has fewer than 3 vertices,
  // repeats its first vertex at the end, self-intersects, or has zero area.
  static RegionPolygon create(std::string id, Ring exterior, std::vector<Ring> holes = {});

  const std::string& id() const { return id_; }
  const Ring& exterior() const { return exterior_; }
  const std::vector<Ring>& holes() const { return holes_; }
  const LocalProjection& projection() const { return projection_; }

  // Bounding box of the exterior ring in local meters.
  const Bounds& local_bounds() const { return bounds_; }

  // Containment in the region's local frame; boundary counts as inside.
  bool contains_local(const Xy& p) const;

  // Unsigned area in square meters (exterior minus holes).
  double area_m2() const;

 private:
  RegionPolygon(std::string id, Ring exterior, std::vector<Ring> holes, LocalProjection proj);

  std::string id_;
  Ring exterior_;
  std::vector<Ring> holes_;
  LocalProjection projection_;
  std::vector<Xy> exterior_xy_;
  std::vector<std::vector<Xy>> holes_xy_;
  Bounds bounds_;
};

// Even-odd ray casting in the region's local projection; points inside the
// exterior and outside every hole are inside, and any point within
// kBoundaryToleranceM of a ring edge counts as inside.
bool point_in_polygon(const GeoPoint& p, const RegionPolygon& poly);

}  // namespace graffmap::geo
