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

#include "graffmap/acquisition/filter.hpp"

namespace graffmap::acquisition {

MetadataPredicate MetadataPredicate::always() {
  return MetadataPredicate([](const ViewRecord&) { return true; });
}

MetadataPredicate MetadataPredicate::first_party() {
  return MetadataPredicate(
      [](const ViewRecord& r) { return r.provider == Provider::kFirstParty; });
}

MetadataPredicate MetadataPredicate::fetched() {
  return MetadataPredicate([](const ViewRecord& r) { return r.status == ViewStatus::kFetched; });
}

MetadataPredicate MetadataPredicate::year_between(int lo, int hi) {
  return MetadataPredicate([lo, hi](const ViewRecord& r) {
    return r.capture_year && *r.capture_year >= lo && *r.capture_year <= hi;
  });
}

MetadataPredicate operator&&(MetadataPredicate a, MetadataPredicate b) {
  return MetadataPredicate(
      [a = std::move(a), b = std::move(b)](const ViewRecord& r) { return a(r) && b(r); });
}

std::vector<ViewRecord> filter_views(std::span<const ViewRecord> records,
                                     const MetadataPredicate& predicate) {
  std::vector<ViewRecord> out;
  for (const auto& r : records) {
    if (predicate(r)) out.push_back(r);
  }
  return out;
}

}  // namespace graffmap::acquisition
