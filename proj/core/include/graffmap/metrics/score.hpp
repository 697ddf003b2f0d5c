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
#include <optional>
#include <span>
#include <string>

#include "graffmap/acquisition/view.hpp"
#include "graffmap/detection/detection_set.hpp"
#include "graffmap/geo/projection.hpp"

namespace graffmap::metrics {

// Graffiti level of one location: G(P), the sum of per-view graffiti area
// fractions.
struct LocationScore {
  std::string point_id;
  geo::GeoPoint location;
  double g_value = 0.0;
  std::size_t k_actual = 0;   // views that were fetched and have detections
  std::size_t k_planned = 0;  // views planned for the point
  double threshold = detection::kDefaultConfidenceThreshold;

  friend bool operator==(const LocationScore&, const LocationScore&) = default;
};

// One planned view and, when it was fetched and run through the detector,
// its detections.
struct ScoredView {
  acquisition::ViewRecord record;
  std::optional<detection::DetectionSet> detections;
};

struct ScoreOptions {
  double threshold = detection::kDefaultConfidenceThreshold;
  // Scale partially observed points to the full view count:
  // g * k_planned / k_actual. Off by default.
  bool rescale_partial = false;
};

// `views` holds every planned view of a single point (k_planned = views.size()).
// Throws Error(kMixedPointIds) if the views name more than one point, and
// Error(kInvalidArgument) for an empty list, a threshold outside [0, 1], or
// detections attached to a view that was not fetched.
LocationScore location_score(std::span<const ScoredView> views, const ScoreOptions& options = {});

}  // namespace graffmap::metrics
