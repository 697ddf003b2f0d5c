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

#include "graffmap/detection/detection_set.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "graffmap/error.hpp"

namespace graffmap::detection {
namespace {

template <typename Set>
void validate_masks(const Set& set) {
  for (std::size_t i = 0; i < set.instances.size(); ++i) {
    const RleMask& m = set.instances[i].mask;
    if (m.height != set.height || m.width != set.width) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("image '{}' instance {}: mask is {}x{}, image is {}x{}",
                              set.image_id, i, m.height, m.width, set.height, set.width));
    }
    validate(m);
  }
}

}  // namespace

void validate(const DetectionSet& set) {
  validate_masks(set);
  for (std::size_t i = 0; i < set.instances.size(); ++i) {
    const double c = set.instances[i].confidence;
    if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("image '{}' instance {}: confidence {} outside [0, 1]",
                              set.image_id, i, c));
    }
  }
}

void validate(const AnnotationSet& set) { validate_masks(set); }

double area_fraction(const DetectionSet& set, double confidence_threshold) {
  const std::uint64_t pixels = std::uint64_t{set.width} * set.height;
  if (set.instances.empty() || pixels == 0) return 0.0;

  std::vector<Span> spans;
  for (const auto& inst : set.instances) {
    if (inst.confidence < confidence_threshold) continue;
    if (inst.mask.height != set.height || inst.mask.width != set.width) {
      throw Error(ErrorCode::kDimensionMismatch,
                  fmt::format("image '{}': instance mask does not match image size",
                              set.image_id));
    }
    const auto s = foreground_spans(inst.mask);
    spans.insert(spans.end(), s.begin(), s.end());
  }
  std::sort(spans.begin(), spans.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });

  std::uint64_t covered = 0;
  std::uint64_t open_begin = 0;
  std::uint64_t open_end = 0;
  bool open = false;
  for (const Span& s : spans) {
    if (open && s.begin <= open_end) {
      open_end = std::max(open_end, s.end);
      continue;
    }
    if (open) covered += open_end - open_begin;
    open_begin = s.begin;
    open_end = s.end;
    open = true;
  }
  if (open) covered += open_end - open_begin;
  return static_cast<double>(covered) / static_cast<double>(pixels);
}

double mask_iou(const RleMask& a, const RleMask& b) {
  if (a.height != b.height || a.width != b.width) {
    throw Error(ErrorCode::kDimensionMismatch,
                fmt::format("iou of {}x{} and {}x{} masks", a.height, a.width, b.height,
                            b.width));
  }
  const auto sa = foreground_spans(a);
  const auto sb = foreground_spans(b);
  std::uint64_t area_a = 0, area_b = 0, inter = 0;
  for (const auto& s : sa) area_a += s.end - s.begin;
  for (const auto& s : sb) area_b += s.end - s.begin;
  // Both span lists are sorted and internally disjoint.
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    const std::uint64_t lo = std::max(sa[i].begin, sb[j].begin);
    const std::uint64_t hi = std::min(sa[i].end, sb[j].end);
    if (lo < hi) inter += hi - lo;
    if (sa[i].end < sb[j].end) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::uint64_t uni = area_a + area_b - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace graffmap::detection
