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

#include "graffmap/acquisition/coverage.hpp"

#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/error.hpp"

namespace graffmap::acquisition {

CoverageReport coverage_report(std::span<const ViewRecord> records, const geo::SampleSet& sample) {
  std::unordered_set<std::string> known;
  known.reserve(sample.points.size());
  for (std::size_t i = 0; i < sample.points.size(); ++i) known.insert(sample.point_id(i));

  struct PointState {
    bool mapped = false;
    std::map<int, std::size_t> years;
  };
  std::unordered_map<std::string, PointState> points;

  CoverageReport report;
  report.total_points = sample.points.size();
  for (const auto& r : records) {
    if (!known.contains(r.spec.point_id)) {
      throw Error(ErrorCode::kUnknownPointId,
                  fmt::format("record for unknown point '{}'", r.spec.point_id));
    }
    if (r.status != ViewStatus::kFetched) continue;
    ++report.views_fetched;
    if (r.provider == Provider::kThirdParty) ++report.excluded_third_party;
    auto& state = points[r.spec.point_id];
    state.mapped = true;
    if (r.capture_year) ++state.years[*r.capture_year];
  }

  for (const auto& [id, state] : points) {
    if (!state.mapped) continue;
    ++report.mapped_points;
    if (state.years.empty()) continue;
    int best_year = 0;
    std::size_t best = 0;
    for (const auto& [year, n] : state.years) {
      if (n >= best) {  // ascending years, so >= keeps the latest on ties
        best = n;
        best_year = year;
      }
    }
    ++report.per_year_counts[best_year];
  }
  return report;
}

std::string coverage_to_json(const CoverageReport& report) {
  nlohmann::ordered_json years = nlohmann::ordered_json::object();
  for (const auto& [year, n] : report.per_year_counts) years[std::to_string(year)] = n;
  nlohmann::ordered_json j = {{"total_points", report.total_points},
                              {"mapped_points", report.mapped_points},
                              {"views_fetched", report.views_fetched},
                              {"excluded_third_party", report.excluded_third_party},
                              {"per_year_counts", years}};
  return j.dump(2) + "\n";
}

std::string year_census_csv(const CoverageReport& report) {
  std::string out = "year,points\n";
  for (const auto& [year, n] : report.per_year_counts) out += fmt::format("{},{}\n", year, n);
  return out;
}

}  // namespace graffmap::acquisition
