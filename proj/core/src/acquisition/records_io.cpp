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

#include "graffmap/acquisition/records_io.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/error.hpp"

namespace graffmap::acquisition {

std::string records_to_json(std::span<const ViewRecord> records) {
  std::string out = "{\"views\": [";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    nlohmann::ordered_json j = {{"point_id", r.spec.point_id},
                                {"lat", r.spec.location.lat},
                                {"lon", r.spec.location.lon},
                                {"heading", r.spec.heading},
                                {"image_id", r.image_id},
                                {"width", r.width},
                                {"height", r.height},
                                {"capture_year", nullptr},
                                {"provider", to_string(r.provider)},
                                {"status", to_string(r.status)}};
    if (r.capture_year) j["capture_year"] = *r.capture_year;
    out += i == 0 ? "\n  " : ",\n  ";
    out += j.dump();
  }
  out += records.empty() ? "]}\n" : "\n]}\n";
  return out;
}

std::vector<ViewRecord> parse_records_json(std::string_view text) {
  std::vector<ViewRecord> out;
  try {
    const auto doc = nlohmann::json::parse(text);
    const auto& views = doc.at("views");
    if (!views.is_array()) throw Error(ErrorCode::kParse, "/views must be an array");
    out.reserve(views.size());
    for (const auto& v : views) {
      ViewRecord r;
      r.spec.point_id = v.at("point_id").get<std::string>();
      r.spec.location = {v.at("lat").get<double>(), v.at("lon").get<double>()};
      r.spec.heading = v.at("heading").get<double>();
      r.image_id = v.at("image_id").get<std::string>();
      r.width = v.at("width").get<std::uint32_t>();
      r.height = v.at("height").get<std::uint32_t>();
      if (!v.at("capture_year").is_null()) r.capture_year = v["capture_year"].get<int>();
      r.provider = parse_provider(v.at("provider").get<std::string>());
      r.status = parse_view_status(v.at("status").get<std::string>());
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("views file: {}", e.what()));
  }
  return out;
}

}  // namespace graffmap::acquisition
