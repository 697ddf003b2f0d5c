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

#include "graffmap/metrics/io.hpp"

#include <cmath>
#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/error.hpp"
#include "graffmap/util/text.hpp"

namespace graffmap::metrics {
namespace {

using nlohmann::ordered_json;

void expect_header(const std::vector<std::vector<std::string>>& rows,
                   const std::vector<std::string>& header, std::string_view what) {
  if (rows.empty() || rows[0] != header) {
    std::string joined;
    for (const auto& h : header) joined += (joined.empty() ? "" : ",") + h;
    throw Error(ErrorCode::kParse, fmt::format("{}: expected header '{}'", what, joined));
  }
}

double real_field(const std::string& text, std::string_view what, std::size_t line) {
  double v = 0.0;
  if (!util::parse_real(text, v) || !std::isfinite(v)) {
    throw Error(ErrorCode::kParse, fmt::format("{}: line {}: bad number '{}'", what, line, text));
  }
  return v;
}

std::size_t count_field(const std::string& text, std::string_view what, std::size_t line) {
  long long v = 0;
  if (!util::parse_int(text, v) || v < 0) {
    throw Error(ErrorCode::kParse, fmt::format("{}: line {}: bad count '{}'", what, line, text));
  }
  return static_cast<std::size_t>(v);
}

ordered_json ring_json(const geo::Ring& ring) {
  ordered_json out = ordered_json::array();
  for (const auto& p : ring) out.push_back({p.lon, p.lat});
  out.push_back({ring.front().lon, ring.front().lat});
  return out;
}

ordered_json polygon_json(const geo::RegionPolygon& poly) {
  ordered_json rings = ordered_json::array();
  rings.push_back(ring_json(poly.exterior()));
  for (const auto& h : poly.holes()) rings.push_back(ring_json(h));
  return rings;
}

}  // namespace

std::string scores_to_csv(std::span<const LocationScore> scores) {
  std::string out = "point_id,lat,lon,g_value,k_actual,k_planned,threshold\n";
  for (const auto& s : scores) {
    out += fmt::format("{},{},{},{},{},{},{}\n", util::csv_escape(s.point_id),
                       util::format_real(s.location.lat), util::format_real(s.location.lon),
                       util::format_real(s.g_value), s.k_actual, s.k_planned,
                       util::format_real(s.threshold));
  }
  return out;
}

std::vector<LocationScore> parse_scores_csv(std::string_view text) {
  constexpr std::string_view kWhat = "scores csv";
  const auto rows = util::parse_csv(text);
  expect_header(rows, {"point_id", "lat", "lon", "g_value", "k_actual", "k_planned", "threshold"},
                kWhat);
  std::vector<LocationScore> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 7) {
      throw Error(ErrorCode::kParse, fmt::format("{}: line {}: expected 7 fields", kWhat, r + 1));
    }
    LocationScore s;
    s.point_id = row[0];
    s.location = {real_field(row[1], kWhat, r + 1), real_field(row[2], kWhat, r + 1)};
    s.g_value = real_field(row[3], kWhat, r + 1);
    s.k_actual = count_field(row[4], kWhat, r + 1);
    s.k_planned = count_field(row[5], kWhat, r + 1);
    s.threshold = real_field(row[6], kWhat, r + 1);
    if (s.g_value < 0.0 || s.k_actual > s.k_planned ||
        s.g_value > static_cast<double>(s.k_planned)) {
      throw Error(ErrorCode::kParse,
                  fmt::format("{}: line {}: inconsistent score for '{}'", kWhat, r + 1, s.point_id));
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string aggregates_to_csv(std::span<const RegionAggregate> aggregates) {
  std::string out = "region_id,g_region,n,class_index\n";
  for (const auto& a : aggregates) {
    out += fmt::format("{},{},{},{}\n", util::csv_escape(a.region_id),
                       util::format_real(a.g_region), a.n, a.class_index);
  }
  return out;
}

std::vector<RegionAggregate> parse_aggregates_csv(std::string_view text) {
  constexpr std::string_view kWhat = "regions csv";
  const auto rows = util::parse_csv(text);
  expect_header(rows, {"region_id", "g_region", "n", "class_index"}, kWhat);
  std::vector<RegionAggregate> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 4) {
      throw Error(ErrorCode::kParse, fmt::format("{}: line {}: expected 4 fields", kWhat, r + 1));
    }
    out.push_back({row[0], real_field(row[1], kWhat, r + 1), count_field(row[2], kWhat, r + 1),
                   static_cast<int>(count_field(row[3], kWhat, r + 1))});
  }
  return out;
}

std::string aggregates_to_geojson(std::span<const RegionAggregate> aggregates,
                                  std::span<const geo::RegionPolygon> districts) {
  std::map<std::string, const RegionAggregate*> by_id;
  for (const auto& a : aggregates) by_id[a.region_id] = &a;

  // Group parts by id, keeping first-appearance order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const geo::RegionPolygon*>> parts;
  for (const auto& d : districts) {
    auto& list = parts[d.id()];
    if (list.empty()) order.push_back(d.id());
    list.push_back(&d);
  }

  ordered_json features = ordered_json::array();
  for (const auto& id : order) {
    const auto& list = parts[id];
    ordered_json geometry;
    if (list.size() == 1) {
      geometry = {{"type", "Polygon"}, {"coordinates", polygon_json(*list[0])}};
    } else {
      ordered_json coords = ordered_json::array();
      for (const auto* p : list) coords.push_back(polygon_json(*p));
      geometry = {{"type", "MultiPolygon"}, {"coordinates", coords}};
    }
    ordered_json props = {{"id", id}, {"g_region", nullptr}, {"n", nullptr}, {"class_index", nullptr}};
    if (const auto it = by_id.find(id); it != by_id.end()) {
      props["g_region"] = it->second->g_region;
      props["n"] = it->second->n;
      props["class_index"] = it->second->class_index;
    }
    features.push_back({{"type", "Feature"}, {"properties", props}, {"geometry", geometry}});
  }
  ordered_json doc = {{"type", "FeatureCollection"}, {"features", features}};
  return doc.dump(2) + "\n";
}

IndicatorTable parse_indicator_csv(std::string_view text) {
  constexpr std::string_view kWhat = "indicator csv";
  const auto rows = util::parse_csv(text);
  expect_header(rows, {"region_id", "value"}, kWhat);
  IndicatorTable out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 2) {
      throw Error(ErrorCode::kParse, fmt::format("{}: line {}: expected 2 fields", kWhat, r + 1));
    }
    if (!out.emplace(row[0], real_field(row[1], kWhat, r + 1)).second) {
      throw Error(ErrorCode::kParse, fmt::format("{}: duplicate region '{}'", kWhat, row[0]));
    }
  }
  return out;
}

}  // namespace graffmap::metrics
