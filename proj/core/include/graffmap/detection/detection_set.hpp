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
#include <string>
#include <string_view>
#include <vector>

#include "graffmap/detection/rle.hpp"

namespace graffmap::detection {

inline constexpr std::string_view kGraffitiLabel = "graffiti";
inline constexpr double kDefaultConfidenceThreshold = 0.5;

struct Instance {
  RleMask mask;
  double confidence = 0.0;
  std::string label{kGraffitiLabel};

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Segmenter output for one image.
struct DetectionSet {
  std::string image_id;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<Instance> instances;

  friend bool operator==(const DetectionSet&, const DetectionSet&) = default;
};

struct Annotation {
  RleMask mask;
  std::string label{kGraffitiLabel};

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// Ground truth for one image; same shape as DetectionSet without confidences.
struct AnnotationSet {
  std::string image_id;
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<Annotation> instances;

  friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

// Throw Error(kDimensionMismatch) or Error(kMalformedRle) on invariant
// violations; confidences outside [0, 1] are kInvalidArgument.
void validate(const DetectionSet& set);
void validate(const AnnotationSet& set);

// Fraction of the image covered by the union of all instance masks whose
// confidence is at least `confidence_threshold`. Overlapping instances are
// counted once. Zero for an image without instances.
double area_fraction(const DetectionSet& set, double confidence_threshold);

// |a & b| / |a | b|, or 0 when both masks are empty.
// Throws Error(kDimensionMismatch) unless both masks have the same shape.
double mask_iou(const RleMask& a, const RleMask& b);

}  // namespace graffmap::detection
