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

namespace graffmap::geo {

// WGS84 coordinate in degrees.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

// Throws Error(kInvalidArgument) unless lat/lon are finite and in range.
void validate(const GeoPoint& p);

// Planar coordinates in meters relative to a projection origin; x grows east,
// y grows north.
struct Xy {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Xy&, const Xy&) = default;
};

inline constexpr double kMetersPerDegreeLat = 111'320.0;

// Equirectangular projection tangent at `origin`. Accurate to well under
// 0.1% for city-scale extents (< ~100 km), which is all the sampler needs.
class LocalProjection {
 public:
  const GeoPoint& origin() const { return origin_; }
  double meters_per_deg_lat() const { return meters_per_deg_lat_; }
  double meters_per_deg_lon() const { return meters_per_deg_lon_; }

  Xy to_xy(const GeoPoint& p) const {
    return {(p.lon - origin_.lon) * meters_per_deg_lon_,
            (p.lat - origin_.lat) * meters_per_deg_lat_};
  }

  GeoPoint from_xy(const Xy& xy) const {
    return {origin_.lat + xy.y / meters_per_deg_lat_,
            origin_.lon + xy.x / meters_per_deg_lon_};
  }

 private:
  friend LocalProjection make_projection(const GeoPoint& origin);
  LocalProjection(GeoPoint origin, double per_lat, double per_lon)
      : origin_(origin), meters_per_deg_lat_(per_lat), meters_per_deg_lon_(per_lon) {}

  GeoPoint origin_;
  double meters_per_deg_lat_;
  double meters_per_deg_lon_;
};

// Throws Error(kPoleProximity) when |origin.lat| >= 89 degrees.
LocalProjection make_projection(const GeoPoint& origin);

double distance(const Xy& a, const Xy& b);

}  // namespace graffmap::geo
