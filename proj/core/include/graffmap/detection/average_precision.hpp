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
#include <span>
#include <string>
#include <vector>

#include "graffmap/detection/detection_set.hpp"

namespace graffmap::detection {

inline constexpr double kDefaultIouThreshold = 0.5;

struct RankedDetection {
  std::string image_id;
  std::size_t instance_index = 0;
  double confidence = 0.0;
  bool true_positive = false;
  double precision = 0.0;
  double recall = 0.0;
};

struct ApEvaluation {
  double average_precision = 0.0;
  double iou_threshold = kDefaultIouThreshold;
  std::size_t num_images = 0;
  std::size_t num_detections = 0;
  std::size_t num_annotations = 0;
  std::size_t true_positives = 0;
  // Pooled ranking, highest confidence first.
  std::vector<RankedDetection> ranking;
};

// VOC-style average precision over instance masks.
//
// Detections from all images are pooled and ranked by confidence (descending;
// ties by image_id, then instance index). Walking the ranking, each
// detection claims the unmatched annotation of its image with the highest
// mask IoU, provided that IoU reaches `iou_threshold`; otherwise it is a
// false positive. AP is the area under the precision envelope with all-points
// interpolation and recall measured against every annotation.
//
// Errors: kMissingAnnotationForImage when a detection image has no annotation
// set, kZeroAnnotations when there is nothing to recall, kInvalidArgument for
// a threshold outside (0, 1] or duplicated image ids.
ApEvaluation evaluate_average_precision(std::span<const DetectionSet> detections,
                                        std::span<const AnnotationSet> annotations,
                                        double iou_threshold = kDefaultIouThreshold);

inline double average_precision(std::span<const DetectionSet> detections,
                                std::span<const AnnotationSet> annotations,
                                double iou_threshold = kDefaultIouThreshold) {
  return evaluate_average_precision(detections, annotations, iou_threshold).average_precision;
}

}  // namespace graffmap::detection
