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

#include "graffmap/pipeline/manifest.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/error.hpp"
#include "graffmap/util/files.hpp"

namespace graffmap::pipeline {

namespace fs = std::filesystem;

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::kSampled: return "sampled";
    case Stage::kFetched: return "fetched";
    case Stage::kDetected: return "detected";
    case Stage::kScored: return "scored";
    case Stage::kAggregated: return "aggregated";
  }
  return "?";
}

std::string_view command_name(Stage s) {
  switch (s) {
    case Stage::kSampled: return "sample";
    case Stage::kFetched: return "fetch";
    case Stage::kDetected: return "detect";
    case Stage::kScored: return "score";
    case Stage::kAggregated: return "aggregate";
  }
  return "?";
}

RunManifest RunManifest::load(const fs::path& output_dir) {
  RunManifest m;
  const fs::path path = output_dir / kFileName;
  std::error_code ec;
  if (!fs::exists(path, ec)) return m;
  try {
    const auto doc = nlohmann::json::parse(util::read_file(path));
    if (doc.at("manifest_version").get<int>() != 1) {
      throw Error(ErrorCode::kParse, fmt::format("{}: unsupported manifest_version", path.string()));
    }
    m.config_hash = doc.value("config_hash", "");
    const auto& stages = doc.at("stages");
    bool gap = false;
    for (Stage s : kStages) {
      const std::string name(to_string(s));
      if (!stages.contains(name)) {
        gap = true;
        continue;
      }
      if (gap) {
        throw Error(ErrorCode::kParse,
                    fmt::format("{}: stage '{}' recorded after an incomplete stage", path.string(), name));
      }
      StageRecord rec;
      rec.inputs = stages[name].at("inputs").get<std::string>();
      rec.outputs = stages[name].at("outputs").get<std::map<std::string, std::string>>();
      m.stages_.emplace(s, std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("{}: {}", path.string(), e.what()));
  }
  return m;
}

void RunManifest::save(const fs::path& output_dir) const {
  nlohmann::ordered_json stages = nlohmann::ordered_json::object();
  for (Stage s : kStages) {
    const auto it = stages_.find(s);
    if (it == stages_.end()) break;
    nlohmann::ordered_json outputs = nlohmann::ordered_json::object();
    for (const auto& [name, sha] : it->second.outputs) outputs[name] = sha;
    stages[std::string(to_string(s))] = {{"inputs", it->second.inputs}, {"outputs", outputs}};
  }
  const nlohmann::ordered_json doc = {
      {"manifest_version", 1}, {"config_hash", config_hash}, {"stages", stages}};
  util::write_file_atomic(output_dir / kFileName, doc.dump(2) + "\n");
}

const StageRecord* RunManifest::record(Stage s) const {
  const auto it = stages_.find(s);
  return it == stages_.end() ? nullptr : &it->second;
}

void RunManifest::mark(Stage s, StageRecord record) {
  for (Stage prior : kStages) {
    if (prior == s) break;
    if (!complete(prior)) {
      throw Error(ErrorCode::kStageOrderViolation,
                  fmt::format("stage '{}' requires stage '{}'", to_string(s), to_string(prior)));
    }
  }
  clear_from(s);
  stages_.emplace(s, std::move(record));
}

void RunManifest::clear_from(Stage s) {
  for (auto it = stages_.lower_bound(s); it != stages_.end();) it = stages_.erase(it);
}

OutputLock::OutputLock(const fs::path& output_dir) {
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  const fs::path path = output_dir / ".graffmap.lock";
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw Error(ErrorCode::kIo, fmt::format("cannot open lock file {}: {}", path.string(),
                                            std::strerror(errno)));
  }
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw Error(ErrorCode::kOutputLocked,
                fmt::format("output directory {} is in use by another graffmap process",
                            output_dir.string()));
  }
}

OutputLock::~OutputLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

}  // namespace graffmap::pipeline
