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

#include "graffmap/geo/io.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/error.hpp"
#include "graffmap/util/text.hpp"

namespace graffmap::geo {
namespace {

using nlohmann::json;

Ring parse_ring(const json& coords, const std::string& where) {
  if (!coords.is_array()) throw Error(ErrorCode::kParse, where + ": ring is not an array");
  Ring ring;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const json& pos = coords[i];
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
      throw Error(ErrorCode::kParse, fmt::format("{}/{}: expected [lon, lat]", where, i));
    }
    ring.push_back({pos[1].get<double>(), pos[0].get<double>()});
  }
  if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  return ring;
}

void append_polygon(std::vector<RegionPolygon>& out, const json& rings, const std::string& id,
                    const std::string& where) {
  if (!rings.is_array() || rings.empty()) {
    throw Error(ErrorCode::kParse, where + ": polygon has no rings");
  }
  Ring exterior = parse_ring(rings[0], where + "/0");
  std::vector<Ring> holes;
  for (std::size_t i = 1; i < rings.size(); ++i) {
    holes.push_back(parse_ring(rings[i], fmt::format("{}/{}", where, i)));
  }
  out.push_back(RegionPolygon::create(id, std::move(exterior), std::move(holes)));
}

void append_geometry(std::vector<RegionPolygon>& out, const json& geometry,
                     const std::string& id, const std::string& where) {
  if (!geometry.is_object()) throw Error(ErrorCode::kParse, where + ": missing geometry");
  const std::string type = geometry.value("type", "");
  const json& coords = geometry.contains("coordinates") ? geometry["coordinates"] : json();
  if (type == "Polygon") {
    append_polygon(out, coords, id, where + "/coordinates");
  } else if (type == "MultiPolygon") {
    if (!coords.is_array()) throw Error(ErrorCode::kParse, where + ": bad MultiPolygon");
    for (std::size_t i = 0; i < coords.size(); ++i) {
      append_polygon(out, coords[i], id, fmt::format("{}/coordinates/{}", where, i));
    }
  } else {
    throw Error(ErrorCode::kParse,
                fmt::format("{}: unsupported geometry type '{}'", where, type));
  }
}

std::string feature_id(const json& feature, std::size_t index) {
  if (feature.contains("properties") && feature["properties"].is_object()) {
    const json& props = feature["properties"];
    if (props.contains("id")) {
      const json& id = props["id"];
      if (id.is_string()) return id.get<std::string>();
      if (id.is_number_integer()) return std::to_string(id.get<long long>());
    }
  }
  return std::to_string(index);
}

}  // namespace

std::vector<RegionPolygon> parse_regions_geojson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, fmt::format("geojson: {}", e.what()));
  }
  std::vector<RegionPolygon> out;
  const std::string type = doc.is_object() ? doc.value("type", "") : "";
  if (type == "FeatureCollection") {
    const json& features = doc["features"];
    if (!features.is_array()) throw Error(ErrorCode::kParse, "geojson: features is not an array");
    for (std::size_t i = 0; i < features.size(); ++i) {
      append_geometry(out, features[i].value("geometry", json()), feature_id(features[i], i),
                      fmt::format("/features/{}/geometry", i));
    }
  } else if (type == "Feature") {
    append_geometry(out, doc.value("geometry", json()), feature_id(doc, 0), "/geometry");
  } else {
    append_geometry(out, doc, "0", "");
  }
  return out;
}

std::string sample_to_csv(const SampleSet& sample) {
  std::string out = "point_id,lat,lon\n";
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    out += fmt::format("{},{},{}\n", sample.point_id(i), util::format_real(sample.points[i].lat),
                       util::format_real(sample.points[i].lon));
  }
  return out;
}

std::vector<GeoPoint> parse_sample_csv(std::string_view text) {
  const auto rows = util::parse_csv(text);
  if (rows.empty() || rows[0] != std::vector<std::string>{"point_id", "lat", "lon"}) {
    throw Error(ErrorCode::kParse, "sample csv: expected header 'point_id,lat,lon'");
  }
  std::vector<GeoPoint> points;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    GeoPoint p;
    if (row.size() != 3 || !util::parse_real(row[1], p.lat) ||
        !util::parse_real(row[2], p.lon)) {
      throw Error(ErrorCode::kParse, fmt::format("sample csv: malformed line {}", r + 1));
    }
    if (row[0] != format_point_id(points.size())) {
      throw Error(ErrorCode::kParse,
                  fmt::format("sample csv: line {} has point_id '{}', expected '{}'", r + 1,
                              row[0], format_point_id(points.size())));
    }
    validate(p);
    points.push_back(p);
  }
  return points;
}

std::string sample_to_geojson(const SampleSet& sample) {
  json features = json::array();
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    features.push_back({{"type", "Feature"},
                        {"properties", {{"point_id", sample.point_id(i)}}},
                        {"geometry",
                         {{"type", "Point"},
                          {"coordinates", {sample.points[i].lon, sample.points[i].lat}}}}});
  }
  json scheme;
  if (const auto* sys = std::get_if<SystematicScheme>(&sample.scheme)) {
    scheme = {{"type", "systematic"}, {"spacing_m", sys->spacing_m}};
  } else {
    const auto& rnd = std::get<RandomScheme>(sample.scheme);
    scheme = {{"type", "random"}, {"n", rnd.n}, {"seed", rnd.seed}};
  }
  json doc = {{"type", "FeatureCollection"},
              {"properties", {{"region_id", sample.region_id}, {"scheme", scheme}}},
              {"features", std::move(features)}};
  return doc.dump(2) + "\n";
}

}  // namespace graffmap::geo
