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

#include "graffmap/acquisition/fetch.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <system_error>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/acquisition/image_info.hpp"
#include "graffmap/error.hpp"
#include "graffmap/util/files.hpp"

namespace graffmap::acquisition {

namespace fs = std::filesystem;

ViewCache::ViewCache(fs::path root) : root_(std::move(root)) {}

fs::path ViewCache::image_path(const ViewSpec& spec) const {
  return root_ / spec.point_id / (format_heading(spec.heading) + ".jpg");
}

fs::path ViewCache::meta_path(const ViewSpec& spec) const {
  return root_ / spec.point_id / (format_heading(spec.heading) + ".meta.json");
}

std::optional<ViewRecord> ViewCache::load(const ViewSpec& spec) const {
  std::error_code ec;
  if (!fs::exists(meta_path(spec), ec)) return std::nullopt;
  try {
    const auto meta = nlohmann::json::parse(util::read_file(meta_path(spec)));
    ViewRecord rec;
    rec.spec = spec;
    rec.status = parse_view_status(meta.at("status").get<std::string>());
    rec.provider = parse_provider(meta.at("provider").get<std::string>());
    if (meta.contains("capture_year") && meta["capture_year"].is_number_integer()) {
      rec.capture_year = meta["capture_year"].get<int>();
    }
    if (rec.status == ViewStatus::kFetched) {
      rec.image_id = meta.at("image_id").get<std::string>();
      rec.width = meta.at("width").get<std::uint32_t>();
      rec.height = meta.at("height").get<std::uint32_t>();
      if (!fs::exists(image_path(spec), ec) ||
          util::sha256_file(image_path(spec)) != rec.image_id) {
        return std::nullopt;
      }
    } else if (rec.status == ViewStatus::kFailed) {
      return std::nullopt;
    }
    return rec;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entry; refetch
  }
}

void ViewCache::store(const ViewRecord& record, std::string_view image_bytes) const {
  const fs::path dir = root_ / record.spec.point_id;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kCacheUnwritable,
                fmt::format("cannot create cache directory {}: {}", dir.string(), ec.message()));
  }
  nlohmann::json meta = {{"point_id", record.spec.point_id},
                         {"heading", record.spec.heading},
                         {"status", to_string(record.status)},
                         {"provider", to_string(record.provider)},
                         {"capture_year", nullptr}};
  if (record.capture_year) meta["capture_year"] = *record.capture_year;
  if (record.status == ViewStatus::kFetched) {
    meta["image_id"] = record.image_id;
    meta["width"] = record.width;
    meta["height"] = record.height;
  }
  try {
    if (record.status == ViewStatus::kFetched) {
      util::write_file_atomic(image_path(record.spec), image_bytes);
    }
    util::write_file_atomic(meta_path(record.spec), meta.dump(2) + "\n");
  } catch (const Error& e) {
    throw Error(ErrorCode::kCacheUnwritable, e.what());
  }
}

ViewRecord make_record(const ViewSpec& spec, const FetchResult& result) {
  ViewRecord rec;
  rec.spec = spec;
  rec.status = result.status;
  rec.provider = result.provider;
  rec.capture_year = result.capture_year;
  if (result.status != ViewStatus::kFetched) return rec;
  const auto size = read_image_size(result.bytes);
  if (!size) {
    rec.status = ViewStatus::kFailed;
    return rec;
  }
  rec.image_id = util::sha256_hex(result.bytes);
  rec.width = size->width;
  rec.height = size->height;
  return rec;
}

std::vector<ViewRecord> fetch_views(std::span<const ViewSpec> specs, ProviderClient& client,
                                    const fs::path& cache_dir, std::size_t max_in_flight,
                                    FetchStats* stats) {
  if (max_in_flight == 0) throw Error(ErrorCode::kInvalidArgument, "max_in_flight must be >= 1");
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  if (ec || !fs::is_directory(cache_dir)) {
    throw Error(ErrorCode::kCacheUnwritable,
                fmt::format("cannot create cache directory {}", cache_dir.string()));
  }
  const ViewCache cache(cache_dir);

  std::vector<ViewRecord> out(specs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> hits{0}, calls{0}, failures{0};
  std::atomic<bool> abort{false};
  std::exception_ptr fatal;
  std::mutex fatal_mu;
  // Striped per-key locks: duplicate specs in one batch fetch once.
  std::array<std::mutex, 64> key_locks;

  auto worker = [&] {
    while (!abort.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      const ViewSpec& spec = specs[i];
      std::lock_guard key_lock(key_locks[std::hash<std::string>{}(view_key(spec)) % key_locks.size()]);
      try {
        if (auto cached = cache.load(spec)) {
          out[i] = std::move(*cached);
          hits.fetch_add(1);
          continue;
        }
        FetchResult result;
        calls.fetch_add(1);
        try {
          result = client.fetch(spec);
        } catch (const std::exception& e) {
          result.status = ViewStatus::kFailed;
          result.detail = e.what();
        }
        ViewRecord rec = make_record(spec, result);
        out[i] = rec;
        if (rec.status == ViewStatus::kFailed) {
          failures.fetch_add(1);
        } else {
          cache.store(rec, result.bytes);
        }
      } catch (...) {
        std::lock_guard lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
        abort.store(true);
        return;
      }
    }
  };

  const std::size_t threads = std::min(max_in_flight, std::max<std::size_t>(specs.size(), 1));
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (fatal) std::rethrow_exception(fatal);
  if (stats) *stats = {hits.load(), calls.load(), failures.load()};
  return out;
}

}  // namespace graffmap::acquisition
