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

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace graffmap::pipeline {

enum class Stage { kSampled, kFetched, kDetected, kScored, kAggregated };

inline constexpr std::array kStages{Stage::kSampled, Stage::kFetched, Stage::kDetected,
                                    Stage::kScored, Stage::kAggregated};

std::string_view to_string(Stage s);
// The subcommand that completes the stage ("sample" for kSampled, ...).
std::string_view command_name(Stage s);

struct StageRecord {
  std::string inputs;                         // fingerprint of everything the stage read
  std::map<std::string, std::string> outputs;  // file name (relative to output dir) -> sha256

  friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

// Completion state of one output directory, stored as manifest.json. A stage
// is recorded only when every earlier stage is.
class RunManifest {
 public:
  static constexpr std::string_view kFileName = "manifest.json";

  // Missing file yields an empty manifest. Throws Error(kParse) for a corrupt
  // file, including one whose stages are out of order.
  static RunManifest load(const std::filesystem::path& output_dir);
  void save(const std::filesystem::path& output_dir) const;

  std::string config_hash;

  bool complete(Stage s) const { return stages_.contains(s); }
  const StageRecord* record(Stage s) const;

  // Throws Error(kStageOrderViolation) unless every earlier stage is complete.
  // Clears all later stages.
  void mark(Stage s, StageRecord record);
  // Removes s and every later stage.
  void clear_from(Stage s);

  friend bool operator==(const RunManifest&, const RunManifest&) = default;

 private:
  std::map<Stage, StageRecord> stages_;
};

// Exclusive advisory lock on an output directory, released on destruction.
// Throws Error(kOutputLocked) if another process holds it.
class OutputLock {
 public:
  explicit OutputLock(const std::filesystem::path& output_dir);
  ~OutputLock();
  OutputLock(const OutputLock&) = delete;
  OutputLock& operator=(const OutputLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace graffmap::pipeline
