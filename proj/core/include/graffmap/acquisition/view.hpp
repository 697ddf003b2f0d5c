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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graffmap/geo/projection.hpp"
#include "graffmap/geo/sampling.hpp"

namespace graffmap::acquisition {

enum class Provider { kFirstParty, kThirdParty, kUnknown };
enum class ViewStatus { kFetched, kNoImagery, kFailed };

std::string_view to_string(Provider p);
std::string_view to_string(ViewStatus s);
// Throw Error(kParse) on unknown names.
Provider parse_provider(std::string_view name);
ViewStatus parse_view_status(std::string_view name);

inline const std::vector<double> kDefaultHeadings{0.0, 90.0, 180.0, 270.0};

// One camera direction at one sample location. Heading is degrees clockwise
// from north in [0, 360).
struct ViewSpec {
  std::string point_id;
  geo::GeoPoint location;
  double heading = 0.0;

  friend bool operator==(const ViewSpec&, const ViewSpec&) = default;
};

struct ViewRecord {
  ViewSpec spec;
  std::string image_id;  // SHA-256 of the image bytes; empty unless fetched
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::optional<int> capture_year;
  Provider provider = Provider::kUnknown;
  ViewStatus status = ViewStatus::kFailed;

  friend bool operator==(const ViewRecord&, const ViewRecord&) = default;
};

// "90" for integral headings, shortest exact decimal otherwise ("22.5").
std::string format_heading(double heading);

// "<point_id>_<heading>", the name used for provider fixtures and as an
// alternative detection image id.
std::string view_key(const ViewSpec& spec);

// |points| x |headings| specs ordered by point, then ascending heading.
// Throws Error(kDuplicateHeading) for repeated headings and
// Error(kInvalidArgument) for an empty list or headings outside [0, 360).
std::vector<ViewSpec> plan_views(const geo::SampleSet& sample, std::vector<double> headings);

}  // namespace graffmap::acquisition
