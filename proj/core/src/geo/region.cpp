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

#include "graffmap/geo/region.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "graffmap/error.hpp"

namespace graffmap::geo {
namespace {

double cross(const Xy& o, const Xy& a, const Xy& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orientation(const Xy& o, const Xy& a, const Xy& b) {
  const double c = cross(o, a, b);
  return (c > 0.0) - (c < 0.0);
}

bool within_box(const Xy& p, const Xy& a, const Xy& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Xy& p1, const Xy& p2, const Xy& q1, const Xy& q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && within_box(q1, p1, p2)) return true;
  if (o2 == 0 && within_box(q2, p1, p2)) return true;
  if (o3 == 0 && within_box(p1, q1, q2)) return true;
  if (o4 == 0 && within_box(p2, q1, q2)) return true;
  return false;
}

double segment_distance(const Xy& p, const Xy& a, const Xy& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

double signed_area(const std::vector<Xy>& ring) {
  double twice = 0.0;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    twice += ring[j].x * ring[i].y - ring[i].x * ring[j].y;
  }
  return 0.5 * twice;
}

void validate_ring(const std::string& id, const char* which, const Ring& ring,
                   const std::vector<Xy>& xy) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kInvalidPolygon,
                fmt::format("region '{}': {} ring {}", id, which, why));
  };
  if (ring.size() < 3) fail("has fewer than 3 vertices");
  for (const auto& p : ring) validate(p);
  if (ring.front() == ring.back()) fail("repeats its first vertex as the last vertex");
  const std::size_t n = xy.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (xy[i] == xy[(i + 1) % n]) fail(fmt::format("has a zero-length edge at vertex {}", i));
  }
  if (std::abs(signed_area(xy)) <= 0.0) fail("has zero area");
  for (std::size_t i = 0; i < n; ++i) {
    const Xy& a1 = xy[i];
    const Xy& a2 = xy[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Xy& b1 = xy[j];
      const Xy& b2 = xy[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared vertex is fine; folding back along the neighbouring edge is not.
        const Xy& shared = (j == i + 1) ? a2 : a1;
        const Xy& other_a = (j == i + 1) ? a1 : a2;
        const Xy& other_b = (j == i + 1) ? b2 : b1;
        if (orientation(shared, other_a, other_b) == 0 &&
            (within_box(other_a, shared, other_b) || within_box(other_b, shared, other_a))) {
          fail(fmt::format("folds back on itself at vertex {}", (j == i + 1) ? j : i));
        }
        continue;
      }
      if (segments_intersect(a1, a2, b1, b2)) {
        fail(fmt::format("self-intersects (edges {} and {})", i, j));
      }
    }
  }
}

bool on_ring_boundary(const Xy& p, const std::vector<Xy>& ring) {
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    if (segment_distance(p, ring[j], ring[i]) <= kBoundaryToleranceM) return true;
  }
  return false;
}

bool even_odd_inside(const Xy& p, const std::vector<Xy>& ring) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Xy& a = ring[i];
    const Xy& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

std::vector<Xy> project_ring(const LocalProjection& proj, const Ring& ring) {
  std::vector<Xy> out;
  out.reserve(ring.size());
  for (const auto& p : ring) out.push_back(proj.to_xy(p));
  return out;
}

}  // namespace

RegionPolygon::RegionPolygon(std::string id, Ring exterior, std::vector<Ring> holes,
                             LocalProjection proj)
    : id_(std::move(id)),
      exterior_(std::move(exterior)),
      holes_(std::move(holes)),
      projection_(proj) {}

RegionPolygon RegionPolygon::create(std::string id, Ring exterior, std::vector<Ring> holes) {
  if (exterior.size() < 3) {
    throw Error(ErrorCode::kInvalidPolygon,
                fmt::format("region '{}': exterior ring has fewer than 3 vertices", id));
  }
  for (const auto& p : exterior) validate(p);
  double min_lat = exterior.front().lat, max_lat = min_lat;
  double min_lon = exterior.front().lon, max_lon = min_lon;
  for (const auto& p : exterior) {
    min_lat = std::min(min_lat, p.lat);
    max_lat = std::max(max_lat, p.lat);
    min_lon = std::min(min_lon, p.lon);
    max_lon = std::max(max_lon, p.lon);
  }
  const LocalProjection proj =
      make_projection({0.5 * (min_lat + max_lat), 0.5 * (min_lon + max_lon)});

  RegionPolygon region(std::move(id), std::move(exterior), std::move(holes), proj);
  region.exterior_xy_ = project_ring(proj, region.exterior_);
  validate_ring(region.id_, "exterior", region.exterior_, region.exterior_xy_);
  for (const auto& hole : region.holes_) {
    if (hole.size() < 3) {
      throw Error(ErrorCode::kInvalidPolygon,
                  fmt::format("region '{}': hole ring has fewer than 3 vertices", region.id_));
    }
    region.holes_xy_.push_back(project_ring(proj, hole));
    validate_ring(region.id_, "hole", hole, region.holes_xy_.back());
  }

  Bounds b{region.exterior_xy_.front().x, region.exterior_xy_.front().y,
           region.exterior_xy_.front().x, region.exterior_xy_.front().y};
  for (const auto& p : region.exterior_xy_) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  region.bounds_ = b;
  return region;
}

bool RegionPolygon::contains_local(const Xy& p) const {
  if (p.x < bounds_.min_x - kBoundaryToleranceM || p.x > bounds_.max_x + kBoundaryToleranceM ||
      p.y < bounds_.min_y - kBoundaryToleranceM || p.y > bounds_.max_y + kBoundaryToleranceM) {
    return false;
  }
  if (on_ring_boundary(p, exterior_xy_)) return true;
  for (const auto& hole : holes_xy_) {
    if (on_ring_boundary(p, hole)) return true;
  }
  if (!even_odd_inside(p, exterior_xy_)) return false;
  for (const auto& hole : holes_xy_) {
    if (even_odd_inside(p, hole)) return false;
  }
  return true;
}

double RegionPolygon::area_m2() const {
  double area = std::abs(signed_area(exterior_xy_));
  for (const auto& hole : holes_xy_) area -= std::abs(signed_area(hole));
  return area;
}

bool point_in_polygon(const GeoPoint& p, const RegionPolygon& poly) {
  return poly.contains_local(poly.projection().to_xy(p));
}

}  // namespace graffmap::geo
