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

#include "graffmap/pipeline/render.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

#include <fmt/format.h>

#include "graffmap/error.hpp"
#include "graffmap/util/text.hpp"

namespace graffmap::pipeline {
namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(std::span<const metrics::RegionAggregate> aggregates,
                       std::span<const geo::RegionPolygon> districts, const SvgOptions& options) {
  if (districts.empty()) throw Error(ErrorCode::kInvalidArgument, "no districts to render");

  double min_lat = std::numeric_limits<double>::infinity(), max_lat = -min_lat;
  double min_lon = min_lat, max_lon = -min_lat;
  for (const auto& d : districts) {
    for (const auto& p : d.exterior()) {
      min_lat = std::min(min_lat, p.lat);
      max_lat = std::max(max_lat, p.lat);
      min_lon = std::min(min_lon, p.lon);
      max_lon = std::max(max_lon, p.lon);
    }
  }
  const auto proj = geo::make_projection({(min_lat + max_lat) / 2.0, (min_lon + max_lon) / 2.0});
  const geo::Xy lo = proj.to_xy({min_lat, min_lon});
  const geo::Xy hi = proj.to_xy({max_lat, max_lon});
  const double inner = options.size_px - 2.0 * options.margin_px;
  const double scale = inner / std::max(hi.x - lo.x, hi.y - lo.y);
  const double height_px = (hi.y - lo.y) * scale + 2.0 * options.margin_px;
  const double width_px = (hi.x - lo.x) * scale + 2.0 * options.margin_px;

  auto ring_path = [&](const geo::Ring& ring) {
    std::string d;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const geo::Xy xy = proj.to_xy(ring[i]);
      const double sx = options.margin_px + (xy.x - lo.x) * scale;
      const double sy = options.margin_px + (hi.y - xy.y) * scale;  // north up
      d += fmt::format("{}{} {}", i == 0 ? "M" : " L", util::format_fixed(sx, 2),
                       util::format_fixed(sy, 2));
    }
    return d + " Z";
  };

  std::map<std::string, const metrics::RegionAggregate*> by_id;
  for (const auto& a : aggregates) by_id[a.region_id] = &a;

  std::vector<std::string> order;
  std::map<std::string, std::string> paths;
  for (const auto& d : districts) {
    auto [it, fresh] = paths.try_emplace(d.id());
    if (fresh) order.push_back(d.id());
    std::string& path = it->second;
    path += (path.empty() ? "" : " ") + ring_path(d.exterior());
    for (const auto& h : d.holes()) path += " " + ring_path(h);
  }

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n"
      "<g stroke=\"#404040\" stroke-width=\"1\" stroke-linejoin=\"round\" fill-rule=\"evenodd\">\n",
      util::format_fixed(width_px, 2), util::format_fixed(height_px, 2));
  for (const auto& id : order) {
    const auto it = by_id.find(id);
    std::string attrs;
    std::string_view fill = kNoDataFill;
    if (it != by_id.end()) {
      const int c = it->second->class_index;
      if (c < 0 || c >= static_cast<int>(kPalette.size())) {
        throw Error(ErrorCode::kInvalidArgument,
                    fmt::format("region '{}' has class {} outside the palette", id, c));
      }
      fill = kPalette[static_cast<std::size_t>(c)];
      attrs = fmt::format(" data-class=\"{}\"", c);
    }
    out += fmt::format("<path data-region=\"{}\"{} fill=\"{}\" d=\"{}\"/>\n", xml_escape(id), attrs,
                       fill, paths[id]);
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace graffmap::pipeline
