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

#include "graffmap/acquisition/view.hpp"

namespace graffmap::acquisition {

// views.json: {"views": [{"point_id", "lat", "lon", "heading", "image_id",
// "width", "height", "capture_year", "provider", "status"}, ...]}
std::string records_to_json(std::span<const ViewRecord> records);

// Throws Error(kParse) on malformed input.
std::vector<ViewRecord> parse_records_json(std::string_view text);

}  // namespace graffmap::acquisition
