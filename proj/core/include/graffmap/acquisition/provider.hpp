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

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "graffmap/acquisition/view.hpp"

namespace graffmap::acquisition {

struct FetchResult {
  ViewStatus status = ViewStatus::kFailed;
  std::string bytes;  // image payload when status is kFetched
  std::optional<int> capture_year;
  Provider provider = Provider::kUnknown;
  std::string detail;  // reason for kFailed
};

// Source of street-level imagery. fetch() is called concurrently from
// several threads and must be thread-safe. Returning kFailed or throwing
// marks that one view as failed; neither aborts the batch.
class ProviderClient {
 public:
  virtual ~ProviderClient() = default;
  virtual FetchResult fetch(const ViewSpec& spec) = 0;
};

// Serves views from a fixture directory holding `<point_id>_<heading>.jpg`
// files and a `manifest.json`:
//
//   {"views": {"000000_90": {"status": "fetched", "year": 2017,
//                            "provider": "first_party"}, ...}}
//
// Views absent from the manifest have no imagery. A "fetched" entry whose
// image file is missing is reported as failed.
class DirectoryProvider final : public ProviderClient {
 public:
  explicit DirectoryProvider(std::filesystem::path directory);
  FetchResult fetch(const ViewSpec& spec) override;

 private:
  struct Entry {
    ViewStatus status;
    std::optional<int> year;
    Provider provider;
  };
  std::filesystem::path directory_;
  std::map<std::string, Entry> entries_;
};

// Token bucket limiter; `rate` tokens per second, holding at most `burst`.
// reserve() never blocks: it books a token and returns how long the caller
// must wait before using it, which keeps the arithmetic testable.
class TokenBucket {
 public:
  using Clock = std::chrono::steady_clock;

  explicit TokenBucket(double rate, double burst = 1.0);

  Clock::duration reserve(Clock::time_point now);
  void acquire();

 private:
  std::mutex mu_;
  double rate_;
  double burst_;
  double tokens_;
  std::optional<Clock::time_point> last_;
};

struct HttpProviderConfig {
  // Placeholders: {lat} {lon} {heading} {width} {height} {api_key}.
  std::string url_template;
  // Optional JSON metadata endpoint with the same placeholders, answering
  // {"status": "ok"|"no_imagery", "year": 2017, "provider": "first_party"}.
  std::string metadata_url_template;
  // Environment variable holding the API key; appended as `key=` when the
  // template has no {api_key} placeholder. Empty disables keys.
  std::string api_key_env;
  double requests_per_second = 10.0;
  std::uint32_t width = 640;
  std::uint32_t height = 640;
  std::chrono::seconds timeout{30};
};

// Generic HTTP(S) imagery client. 200 responses carry the image, 404 means no
// imagery, anything else is a failure.
class HttpProvider final : public ProviderClient {
 public:
  // Throws Error(kConfigInvalid) for malformed templates or a missing key.
  explicit HttpProvider(HttpProviderConfig config);
  FetchResult fetch(const ViewSpec& spec) override;

  // Placeholder expansion, exposed for tests.
  std::string expand(const std::string& tmpl, const ViewSpec& spec) const;

 private:
  HttpProviderConfig config_;
  std::string api_key_;
  TokenBucket bucket_;
};

}  // namespace graffmap::acquisition
