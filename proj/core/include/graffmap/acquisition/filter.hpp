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

#include <functional>
#include <span>
#include <vector>

#include "graffmap/acquisition/view.hpp"

namespace graffmap::acquisition {

// Composable record predicate. `a && b` is the conjunction.
class MetadataPredicate {
 public:
  using Fn = std::function<bool(const ViewRecord&)>;

  explicit MetadataPredicate(Fn fn) : fn_(std::move(fn)) {}

  static MetadataPredicate always();
  static MetadataPredicate first_party();
  static MetadataPredicate fetched();
  // Closed range; records without a capture year never match.
  static MetadataPredicate year_between(int lo, int hi);

  bool operator()(const ViewRecord& r) const { return fn_(r); }

  friend MetadataPredicate operator&&(MetadataPredicate a, MetadataPredicate b);

 private:
  Fn fn_;
};

std::vector<ViewRecord> filter_views(std::span<const ViewRecord> records,
                                     const MetadataPredicate& predicate);

}  // namespace graffmap::acquisition
