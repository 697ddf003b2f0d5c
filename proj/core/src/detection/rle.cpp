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

#include "graffmap/detection/rle.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "graffmap/error.hpp"

namespace graffmap::detection {

void validate(const RleMask& mask) {
  if (mask.height == 0 || mask.width == 0) {
    throw Error(ErrorCode::kMalformedRle,
                fmt::format("mask has empty dimensions {}x{}", mask.height, mask.width));
  }
  if (mask.counts.empty()) throw Error(ErrorCode::kMalformedRle, "mask has no runs");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < mask.counts.size(); ++i) {
    if (i > 0 && mask.counts[i] == 0) {
      throw Error(ErrorCode::kMalformedRle, fmt::format("run {} has zero length", i));
    }
    total += mask.counts[i];
  }
  const std::uint64_t expected = std::uint64_t{mask.height} * mask.width;
  if (total != expected) {
    throw Error(ErrorCode::kMalformedRle,
                fmt::format("runs sum to {}, expected {} ({}x{})", total, expected,
                            mask.height, mask.width));
  }
}

BitGrid decode_mask(const RleMask& mask) {
  validate(mask);
  BitGrid grid(mask.height, mask.width);
  std::size_t pos = 0;
  bool foreground = false;
  for (std::uint32_t run : mask.counts) {
    if (foreground) std::fill_n(grid.bits.begin() + static_cast<std::ptrdiff_t>(pos), run, 1);
    pos += run;
    foreground = !foreground;
  }
  return grid;
}

RleMask encode_mask(const BitGrid& grid) {
  RleMask out{grid.height, grid.width, {}};
  std::uint8_t current = 0;
  std::uint32_t run = 0;
  for (std::uint8_t bit : grid.bits) {
    const std::uint8_t v = bit ? 1 : 0;
    if (v != current) {
      out.counts.push_back(run);
      run = 0;
      current = v;
    }
    ++run;
  }
  out.counts.push_back(run);
  return out;
}

std::uint64_t mask_area(const RleMask& mask) {
  std::uint64_t area = 0;
  for (std::size_t i = 1; i < mask.counts.size(); i += 2) area += mask.counts[i];
  return area;
}

std::vector<Span> foreground_spans(const RleMask& mask) {
  std::vector<Span> spans;
  spans.reserve(mask.counts.size() / 2);
  std::uint64_t pos = 0;
  for (std::size_t i = 0; i < mask.counts.size(); ++i) {
    const std::uint64_t next = pos + mask.counts[i];
    if (i % 2 == 1) spans.push_back({pos, next});
    pos = next;
  }
  return spans;
}

}  // namespace graffmap::detection
