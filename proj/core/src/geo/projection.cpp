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

#include "graffmap/geo/projection.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "graffmap/error.hpp"

namespace graffmap::geo {

void validate(const GeoPoint& p) {
  if (!std::isfinite(p.lat) || !std::isfinite(p.lon) || p.lat < -90.0 || p.lat > 90.0 ||
      p.lon < -180.0 || p.lon > 180.0) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("coordinate out of range: lat={} lon={}", p.lat, p.lon));
  }
}

LocalProjection make_projection(const GeoPoint& origin) {
  validate(origin);
  if (std::abs(origin.lat) >= 89.0) {
    throw Error(ErrorCode::kPoleProximity,
                fmt::format("projection origin latitude {} is within 1 degree of a pole",
                            origin.lat));
  }
  const double per_lon =
      kMetersPerDegreeLat * std::cos(origin.lat * std::numbers::pi / 180.0);
  return LocalProjection(origin, kMetersPerDegreeLat, per_lon);
}

double distance(const Xy& a, const Xy& b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace graffmap::geo
