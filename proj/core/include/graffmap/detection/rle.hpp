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
#include <vector>

namespace graffmap::detection {

// Binary mask as alternating background/foreground run lengths over pixels in
// row-major order (row 0 left to right, then row 1, ...). The first run is
// background and may be zero; every later run is positive.
//
// Test vectors (2x2):
//   [4]        all background
//   [0, 4]     all foreground
//   [1, 2, 1]  pixels (0,1) and (1,0) set
struct RleMask {
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::vector<std::uint32_t> counts;

  friend bool operator==(const RleMask&, const RleMask&) = default;
};

struct BitGrid {
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::vector<std::uint8_t> bits;  // row-major, 0 or 1

  BitGrid() = default;
  BitGrid(std::uint32_t h, std::uint32_t w) : height(h), width(w), bits(std::size_t{h} * w, 0) {}

  std::uint8_t at(std::uint32_t row, std::uint32_t col) const {
    return bits[std::size_t{row} * width + col];
  }
  void set(std::uint32_t row, std::uint32_t col, bool on = true) {
    bits[std::size_t{row} * width + col] = on ? 1 : 0;
  }

  friend bool operator==(const BitGrid&, const BitGrid&) = default;
};

// Throws Error(kMalformedRle) when dimensions are zero, the counts do not sum
// to height * width, or a run other than the first is zero.
void validate(const RleMask& mask);

BitGrid decode_mask(const RleMask& mask);
RleMask encode_mask(const BitGrid& grid);

// Number of foreground pixels.
std::uint64_t mask_area(const RleMask& mask);

// Half-open [begin, end) pixel-index spans of the foreground runs.
struct Span {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
};
std::vector<Span> foreground_spans(const RleMask& mask);

}  // namespace graffmap::detection
