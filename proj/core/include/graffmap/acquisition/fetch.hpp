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
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "graffmap/acquisition/provider.hpp"
#include "graffmap/acquisition/view.hpp"

namespace graffmap::acquisition {

// On-disk view cache:
//   <root>/<point_id>/<heading>.jpg        image bytes (fetched views only)
//   <root>/<point_id>/<heading>.meta.json  record metadata, written last
// Fetched and no-imagery outcomes are cached; failures are not, so a later
// run retries them.
class ViewCache {
 public:
  explicit ViewCache(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path image_path(const ViewSpec& spec) const;
  std::filesystem::path meta_path(const ViewSpec& spec) const;

  // Cached record for spec, or nullopt on a miss (including an image whose
  // bytes no longer hash to the recorded id).
  std::optional<ViewRecord> load(const ViewSpec& spec) const;

  // Throws Error(kCacheUnwritable) if the entry cannot be written.
  void store(const ViewRecord& record, std::string_view image_bytes) const;

 private:
  std::filesystem::path root_;
};

// Turns a provider response into a record: hashes the bytes and reads the
// image dimensions (undecodable payloads become kFailed).
ViewRecord make_record(const ViewSpec& spec, const FetchResult& result);

struct FetchStats {
  std::size_t cache_hits = 0;
  std::size_t client_calls = 0;
  std::size_t failures = 0;
};

// Fetches every spec through `client` with at most `max_in_flight` requests in
// progress, consulting and filling the cache under `cache_dir`. The result is
// index-aligned with `specs`. Individual fetch failures become kFailed
// records; an unwritable cache aborts with Error(kCacheUnwritable).
std::vector<ViewRecord> fetch_views(std::span<const ViewSpec> specs, ProviderClient& client,
                                    const std::filesystem::path& cache_dir,
                                    std::size_t max_in_flight, FetchStats* stats = nullptr);

}  // namespace graffmap::acquisition
