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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "graffmap/acquisition/provider.hpp"
#include "graffmap/detection/average_precision.hpp"
#include "graffmap/pipeline/config.hpp"
#include "graffmap/pipeline/manifest.hpp"

namespace graffmap::pipeline {

// Output file names, relative to the output directory.
namespace files {
inline constexpr std::string_view kSampleCsv = "sample.csv";
inline constexpr std::string_view kSampleGeojson = "sample.geojson";
inline constexpr std::string_view kCacheDir = "cache";
inline constexpr std::string_view kViews = "views.json";
inline constexpr std::string_view kCoverage = "coverage.json";
inline constexpr std::string_view kYearCensus = "year_census.csv";
inline constexpr std::string_view kDetections = "detections.json";
inline constexpr std::string_view kScores = "scores.csv";
inline constexpr std::string_view kRegionsGeojson = "regions.geojson";
inline constexpr std::string_view kRegionsCsv = "regions.csv";
inline constexpr std::string_view kCorrelation = "correlation.json";
inline constexpr std::string_view kMap = "map.svg";
}  // namespace files

struct RunOptions {
  // Rerun a completed stage even if its inputs are unchanged; clears later stages.
  bool force = false;
  // Detection file for `detect`; overrides the config's `detections`.
  std::optional<std::filesystem::path> detections;
  // Replaces the configured provider (tests, instrumentation).
  acquisition::ProviderClient* client = nullptr;
};

struct CommandResult {
  std::string command;
  bool ran = false;  // false when the stage was already up to date
  std::string summary;
};

// Each command checks that earlier stages are complete
// (Error(kStageOrderViolation)) and that their recorded outputs are intact
// (Error(kStaleStage)). A completed stage with unchanged inputs is a no-op;
// changed inputs require `force`. Error messages are prefixed with the
// command name.
CommandResult cmd_sample(const PipelineConfig& config, const RunOptions& options = {});
CommandResult cmd_fetch(const PipelineConfig& config, const RunOptions& options = {});
CommandResult cmd_detect(const PipelineConfig& config, const RunOptions& options = {});
CommandResult cmd_score(const PipelineConfig& config, const RunOptions& options = {});
CommandResult cmd_aggregate(const PipelineConfig& config, const RunOptions& options = {});
// Requires the aggregated stage; rewrites map.svg.
CommandResult cmd_render(const PipelineConfig& config, const RunOptions& options = {});

// All stages in order, then render.
std::vector<CommandResult> run_all(const PipelineConfig& config, const RunOptions& options = {});

// Standalone detector evaluation; returns the JSON report.
std::string cmd_evaluate(const std::filesystem::path& detections_file,
                         const std::filesystem::path& annotations_file,
                         double iou_threshold = detection::kDefaultIouThreshold);

std::string evaluation_report_json(const detection::ApEvaluation& eval);

}  // namespace graffmap::pipeline
