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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "graffmap/geo/region.hpp"
#include "graffmap/geo/sampling.hpp"
#include "graffmap/metrics/score.hpp"

namespace graffmap::metrics {

// Graffiti level of a region, G(R): the mean of its locations' G(P).
struct RegionAggregate {
  std::string region_id;
  double g_region = 0.0;
  std::size_t n = 0;
  int class_index = 0;

  friend bool operator==(const RegionAggregate&, const RegionAggregate&) = default;
};

using Assignment = std::map<std::string, std::string>;  // point_id -> region_id
using IndicatorTable = std::map<std::string, double>;   // region_id -> value

inline constexpr double kDefaultLogEpsilon = 1e-6;

// Locations with k_actual < min_views are dropped; regions left with no
// locations are omitted. Sums run in point_id order; output is sorted by
// region_id. Throws Error(kUnassignedPoint) for a score with no region.
std::vector<RegionAggregate> region_aggregate(std::span<const LocationScore> scores,
                                              const Assignment& assignment,
                                              std::size_t min_views = 1);

// First containing district in input order wins; uncovered points are absent.
Assignment assign_districts(const geo::SampleSet& sample,
                            std::span<const geo::RegionPolygon> districts);

// Equal-width classes over log(g_region + epsilon) between the observed
// extremes. All-equal input maps to class 0.
std::vector<RegionAggregate> log_class_breaks(std::vector<RegionAggregate> aggregates,
                                              int n_classes,
                                              double epsilon = kDefaultLogEpsilon);

// Spearman correlation over regions present in both inputs, average ranks for
// ties. Throws Error(kInsufficientOverlap) below three shared regions and
// Error(kDegenerateRanks) when either side is constant.
double rank_correlation(std::span<const RegionAggregate> aggregates,
                        const IndicatorTable& indicator);

// Average (fractional) ranks, 1-based.
std::vector<double> average_ranks(std::span<const double> values);

}  // namespace graffmap::metrics
