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

#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/acquisition/provider.hpp"
#include "graffmap/error.hpp"
#include "graffmap/util/files.hpp"

namespace graffmap::acquisition {

DirectoryProvider::DirectoryProvider(std::filesystem::path directory)
    : directory_(std::move(directory)) {
  const auto manifest_path = directory_ / "manifest.json";
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(util::read_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("{}: {}", manifest_path.string(), e.what()));
  }
  if (!doc.contains("views") || !doc["views"].is_object()) {
    throw Error(ErrorCode::kParse,
                fmt::format("{}: expected an object under \"views\"", manifest_path.string()));
  }
  for (const auto& [key, value] : doc["views"].items()) {
    Entry entry{ViewStatus::kFetched, std::nullopt, Provider::kUnknown};
    if (value.contains("status")) entry.status = parse_view_status(value["status"].get<std::string>());
    if (value.contains("provider")) entry.provider = parse_provider(value["provider"].get<std::string>());
    if (value.contains("year") && value["year"].is_number_integer()) entry.year = value["year"].get<int>();
    entries_.emplace(key, entry);
  }
}

FetchResult DirectoryProvider::fetch(const ViewSpec& spec) {
  const std::string key = view_key(spec);
  auto it = entries_.find(key);
  if (it == entries_.end()) return {ViewStatus::kNoImagery, {}, std::nullopt, Provider::kUnknown, {}};
  const Entry& e = it->second;
  FetchResult out{e.status, {}, e.year, e.provider, {}};
  if (e.status == ViewStatus::kFailed) out.detail = "fixture marks view as failed";
  if (e.status != ViewStatus::kFetched) return out;
  const auto image = directory_ / (key + ".jpg");
  std::ifstream probe(image, std::ios::binary);
  if (!probe) {
    out.status = ViewStatus::kFailed;
    out.detail = fmt::format("missing fixture image {}", image.string());
    return out;
  }
  out.bytes = util::read_file(image);
  return out;
}

}  // namespace graffmap::acquisition
