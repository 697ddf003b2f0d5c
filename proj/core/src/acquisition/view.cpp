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

#include "graffmap/acquisition/view.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "graffmap/error.hpp"
#include "graffmap/util/text.hpp"

namespace graffmap::acquisition {

std::string_view to_string(Provider p) {
  switch (p) {
    case Provider::kFirstParty: return "first_party";
    case Provider::kThirdParty: return "third_party";
    case Provider::kUnknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(ViewStatus s) {
  switch (s) {
    case ViewStatus::kFetched: return "fetched";
    case ViewStatus::kNoImagery: return "no_imagery";
    case ViewStatus::kFailed: return "failed";
  }
  return "failed";
}

Provider parse_provider(std::string_view name) {
  for (Provider p : {Provider::kFirstParty, Provider::kThirdParty, Provider::kUnknown}) {
    if (to_string(p) == name) return p;
  }
  throw Error(ErrorCode::kParse, fmt::format("unknown provider '{}'", name));
}

ViewStatus parse_view_status(std::string_view name) {
  for (ViewStatus s : {ViewStatus::kFetched, ViewStatus::kNoImagery, ViewStatus::kFailed}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::kParse, fmt::format("unknown view status '{}'", name));
}

std::string format_heading(double heading) {
  if (heading == std::floor(heading) && std::abs(heading) < 1e15) {
    return fmt::format("{}", static_cast<long long>(heading));
  }
  return util::format_real(heading);
}

std::string view_key(const ViewSpec& spec) {
  return spec.point_id + "_" + format_heading(spec.heading);
}

std::vector<ViewSpec> plan_views(const geo::SampleSet& sample, std::vector<double> headings) {
  if (headings.empty()) throw Error(ErrorCode::kInvalidArgument, "no headings given");
  for (double h : headings) {
    if (!(h >= 0.0 && h < 360.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("heading {} outside [0, 360)", h));
    }
  }
  std::sort(headings.begin(), headings.end());
  if (auto dup = std::adjacent_find(headings.begin(), headings.end()); dup != headings.end()) {
    throw Error(ErrorCode::kDuplicateHeading, fmt::format("heading {} listed twice", *dup));
  }
  std::vector<ViewSpec> specs;
  specs.reserve(sample.points.size() * headings.size());
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    const std::string id = sample.point_id(i);
    for (double h : headings) specs.push_back({id, sample.points[i], h});
  }
  return specs;
}

}  // namespace graffmap::acquisition
