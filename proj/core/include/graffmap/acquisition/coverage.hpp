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

#include "graffmap/acquisition/view.hpp"
#include "graffmap/geo/sampling.hpp"

namespace graffmap::acquisition {

struct CoverageReport {
  std::size_t total_points = 0;
  std::size_t mapped_points = 0;  // points with at least one fetched view
  std::size_t views_fetched = 0;
  std::map<int, std::size_t> per_year_counts;  // mapped points by modal capture year
  std::size_t excluded_third_party = 0;        // fetched views from third parties

  friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

// A point's year is the most frequent capture year among its fetched views,
// ties going to the later year. Throws Error(kUnknownPointId) for records
// whose point is not in the sample.
CoverageReport coverage_report(std::span<const ViewRecord> records, const geo::SampleSet& sample);

std::string coverage_to_json(const CoverageReport& report);
// `year,points` rows in ascending year order.
std::string year_census_csv(const CoverageReport& report);

}  // namespace graffmap::acquisition
