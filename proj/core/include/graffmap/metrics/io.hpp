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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graffmap/geo/region.hpp"
#include "graffmap/metrics/aggregate.hpp"
#include "graffmap/metrics/score.hpp"

namespace graffmap::metrics {

// point_id,lat,lon,g_value,k_actual,k_planned,threshold
std::string scores_to_csv(std::span<const LocationScore> scores);
std::vector<LocationScore> parse_scores_csv(std::string_view text);

// region_id,g_region,n,class_index
std::string aggregates_to_csv(std::span<const RegionAggregate> aggregates);
std::vector<RegionAggregate> parse_aggregates_csv(std::string_view text);

// One feature per district id (MultiPolygon when the id has several parts)
// with properties id, g_region, n, class_index; the last three are null for
// districts without an aggregate.
std::string aggregates_to_geojson(std::span<const RegionAggregate> aggregates,
                                  std::span<const geo::RegionPolygon> districts);

// region_id,value with a required header. Throws Error(kParse) on malformed
// rows, duplicate ids or non-finite values.
IndicatorTable parse_indicator_csv(std::string_view text);

}  // namespace graffmap::metrics
