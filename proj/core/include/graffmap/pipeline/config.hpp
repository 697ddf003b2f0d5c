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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "graffmap/acquisition/provider.hpp"
#include "graffmap/geo/sampling.hpp"

namespace graffmap::pipeline {

inline constexpr int kConfigVersion = 1;
inline constexpr int kMaxClasses = 9;

struct StubProviderConfig {
  std::filesystem::path directory;
};

using ProviderConfig = std::variant<StubProviderConfig, acquisition::HttpProviderConfig>;

// Relative paths in the file resolve against the file's directory.
struct PipelineConfig {
  std::filesystem::path region_geojson;
  std::filesystem::path districts_geojson;
  geo::SamplingScheme sampling = geo::SystematicScheme{102.0};
  std::vector<double> headings = {0.0, 90.0, 180.0, 270.0};
  ProviderConfig provider;
  std::size_t max_in_flight = 4;
  bool exclude_third_party = true;
  std::optional<std::pair<int, int>> capture_years;  // closed range
  std::optional<std::filesystem::path> detections;  // default input for `detect`
  double confidence_threshold = 0.5;
  bool rescale_partial = false;
  std::size_t min_views = 1;
  int n_classes = 5;
  double log_epsilon = 1e-6;
  std::optional<std::filesystem::path> indicator_csv;
  std::filesystem::path output_dir;
};

// Parses and validates a config document. Throws Error(kConfigInvalid) whose
// message starts with the offending field path.
PipelineConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace graffmap::pipeline
