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

#include <vector>

#include "graffmap/geo/projection.hpp"

// Test-only reference implementations. They share no code with the library.
namespace graffmap::oracle {

// Winding number of a closed ring around p (Sunday's crossing-direction form).
inline int winding_number(const geo::Xy& p, const std::vector<geo::Xy>& ring) {
  auto is_left = [](const geo::Xy& a, const geo::Xy& b, const geo::Xy& c) {
    return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  };
  int wn = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const geo::Xy& a = ring[i];
    const geo::Xy& b = ring[(i + 1) % ring.size()];
    if (a.y <= p.y) {
      if (b.y > p.y && is_left(a, b, p) > 0) ++wn;
    } else {
      if (b.y <= p.y && is_left(a, b, p) < 0) --wn;
    }
  }
  return wn;
}

inline bool inside_by_winding(const geo::Xy& p, const std::vector<geo::Xy>& exterior,
                              const std::vector<std::vector<geo::Xy>>& holes = {}) {
  if (winding_number(p, exterior) == 0) return false;
  for (const auto& h : holes) {
    if (winding_number(p, h) != 0) return false;
  }
  return true;
}

}  // namespace graffmap::oracle
