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

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "graffmap/geo/region.hpp"
#include "graffmap/metrics/aggregate.hpp"

namespace graffmap::pipeline {

// Sequential palette, lightest first; class_index selects the entry.
inline constexpr std::array<std::string_view, 9> kPalette{
    "#ffffcc", "#ffeda0", "#fed976", "#feb24c", "#fd8d3c",
    "#fc4e2a", "#e31a1c", "#bd0026", "#800026"};
inline constexpr std::string_view kNoDataFill = "#d9d9d9";

struct SvgOptions {
  double size_px = 800.0;  // length of the longer side, margins included
  double margin_px = 10.0;
};

// Choropleth with one <path> per district id (parts of a multi-part district
// share a path), carrying data-region and, when aggregated, data-class.
// Districts without an aggregate get kNoDataFill. Throws
// Error(kInvalidArgument) for a class_index outside the palette.
std::string render_svg(std::span<const metrics::RegionAggregate> aggregates,
                       std::span<const geo::RegionPolygon> districts, const SvgOptions& options = {});

}  // namespace graffmap::pipeline
