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

#include <string>
#include <string_view>
#include <vector>

#include "graffmap/geo/region.hpp"
#include "graffmap/geo/sampling.hpp"

namespace graffmap::geo {

// Parses Polygon and MultiPolygon geometries out of a GeoJSON
// FeatureCollection, a single Feature, or a bare geometry. Each polygon part
// becomes one RegionPolygon; parts of a MultiPolygon share the feature's id.
// The id is the feature property "id" (string or integer) and falls back to
// the zero-based feature index. A closing vertex equal to the first is
// dropped before validation.
std::vector<RegionPolygon> parse_regions_geojson(std::string_view text);

// `point_id,lat,lon` with a header row; coordinates use the shortest exact
// decimal representation.
std::string sample_to_csv(const SampleSet& sample);

// Reads the CSV written by sample_to_csv. Point ids must be the expected
// row-major sequence.
std::vector<GeoPoint> parse_sample_csv(std::string_view text);

// FeatureCollection of Point features carrying a "point_id" property.
std::string sample_to_geojson(const SampleSet& sample);

}  // namespace graffmap::geo
