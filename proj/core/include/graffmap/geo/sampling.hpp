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

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "graffmap/geo/projection.hpp"
#include "graffmap/geo/region.hpp"

namespace graffmap::geo {

struct SystematicScheme {
  double spacing_m = 0.0;
  friend bool operator==(const SystematicScheme&, const SystematicScheme&) = default;
};

struct RandomScheme {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  friend bool operator==(const RandomScheme&, const RandomScheme&) = default;
};

using SamplingScheme = std::variant<SystematicScheme, RandomScheme>;

struct SampleSet {
  SamplingScheme scheme;
  std::string region_id;
  std::vector<GeoPoint> points;

  // Identifier of points[index]; see format_point_id.
  std::string point_id(std::size_t index) const;
};

// Zero-padded decimal index, at least six digits wide ("000042").
std::string format_point_id(std::size_t index);

// Axis-aligned grid in the region's local projection, anchored at the
// bounding-box minimum corner with both far edges inclusive. Points are
// ordered south-to-north by row, west-to-east within a row.
// Throws Error(kEmptySample) when no grid node falls inside the region.
SampleSet systematic_grid(const RegionPolygon& region, double spacing_m);

// Rejection sampling over the region's bounding box; deterministic in `seed`.
// Throws Error(kRejectionBudgetExceeded) when, after 10^6 rejections, the
// acceptance ratio is below 10^-6.
SampleSet random_sample(const RegionPolygon& region, std::size_t n, std::uint64_t seed);

// Monte Carlo fill distance: the largest distance (meters) from any of
// `probe_n` uniform interior probes to its nearest sample point. Probes are
// drawn exactly as random_sample(region, probe_n, seed) would draw them.
double coverage_radius(const SampleSet& sample, const RegionPolygon& region,
                       std::size_t probe_n, std::uint64_t seed);

}  // namespace graffmap::geo
