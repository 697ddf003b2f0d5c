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

#include "graffmap/metrics/score.hpp"

#include <fmt/format.h>

#include "graffmap/error.hpp"

namespace graffmap::metrics {

LocationScore location_score(std::span<const ScoredView> views, const ScoreOptions& options) {
  if (views.empty()) throw Error(ErrorCode::kInvalidArgument, "location_score: no views");
  if (!(options.threshold >= 0.0 && options.threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("confidence threshold {} outside [0, 1]", options.threshold));
  }
  LocationScore score;
  score.point_id = views.front().record.spec.point_id;
  score.location = views.front().record.spec.location;
  score.k_planned = views.size();
  score.threshold = options.threshold;
  for (const auto& v : views) {
    if (v.record.spec.point_id != score.point_id) {
      throw Error(ErrorCode::kMixedPointIds,
                  fmt::format("views of '{}' and '{}' passed to one location score",
                              score.point_id, v.record.spec.point_id));
    }
    if (!v.detections) continue;
    if (v.record.status != acquisition::ViewStatus::kFetched) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("view {} has detections but was not fetched",
                              acquisition::view_key(v.record.spec)));
    }
    score.g_value += detection::area_fraction(*v.detections, options.threshold);
    ++score.k_actual;
  }
  if (options.rescale_partial && score.k_actual > 0 && score.k_actual < score.k_planned) {
    score.g_value *= static_cast<double>(score.k_planned) / static_cast<double>(score.k_actual);
  }
  return score;
}

}  // namespace graffmap::metrics
