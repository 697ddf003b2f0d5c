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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graffmap/detection/detection_set.hpp"

namespace graffmap::detection {

inline constexpr int kWireFormatVersion = 1;

// Batch document exchanged with the segmenter:
//
//   {"format_version": 1, "images": [
//     {"image_id": str, "width": int, "height": int, "instances": [
//       {"label": "graffiti", "confidence": float,
//        "rle": {"size": [height, width], "counts": [int, ...]}}]}]}
//
// Annotation documents are identical except that instances carry no
// "confidence". Parsing rejects unknown versions and any invariant violation
// with Error(kSchemaViolation), whose message starts with the JSON pointer of
// the offending value (e.g. "/images/0/instances/2/rle/counts").
std::vector<DetectionSet> parse_detection_file(std::string_view text);
std::vector<AnnotationSet> parse_annotation_file(std::string_view text);

// Canonical text: one image object per line, shortest round-trip numbers.
std::string emit_detection_file(std::span<const DetectionSet> sets);
std::string emit_annotation_file(std::span<const AnnotationSet> sets);

}  // namespace graffmap::detection
