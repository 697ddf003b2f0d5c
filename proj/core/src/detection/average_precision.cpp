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

#include "graffmap/detection/average_precision.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "graffmap/error.hpp"

namespace graffmap::detection {
namespace {

struct Candidate {
  const DetectionSet* image;
  std::size_t instance;
  double confidence;
};

}  // namespace

ApEvaluation evaluate_average_precision(std::span<const DetectionSet> detections,
                                        std::span<const AnnotationSet> annotations,
                                        double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("iou threshold {} outside (0, 1]", iou_threshold));
  }

  std::map<std::string, const AnnotationSet*> truth;
  std::size_t total_annotations = 0;
  for (const auto& ann : annotations) {
    validate(ann);
    if (!truth.emplace(ann.image_id, &ann).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("duplicate annotation image_id '{}'", ann.image_id));
    }
    total_annotations += ann.instances.size();
  }

  std::vector<Candidate> pool;
  std::set<std::string> seen;
  for (const auto& det : detections) {
    validate(det);
    if (!seen.insert(det.image_id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("duplicate detection image_id '{}'", det.image_id));
    }
    if (!truth.contains(det.image_id)) {
      throw Error(ErrorCode::kMissingAnnotationForImage,
                  fmt::format("no annotations for image '{}'", det.image_id));
    }
    for (std::size_t i = 0; i < det.instances.size(); ++i) {
      pool.push_back({&det, i, det.instances[i].confidence});
    }
  }
  if (total_annotations == 0) {
    throw Error(ErrorCode::kZeroAnnotations, "average precision is undefined without annotations");
  }

  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.image->image_id != b.image->image_id) return a.image->image_id < b.image->image_id;
    return a.instance < b.instance;
  });

  std::map<std::string, std::vector<bool>> claimed;
  for (const auto& [id, ann] : truth) claimed[id].assign(ann->instances.size(), false);

  ApEvaluation out;
  out.iou_threshold = iou_threshold;
  out.num_images = truth.size();
  out.num_detections = pool.size();
  out.num_annotations = total_annotations;
  out.ranking.reserve(pool.size());

  std::size_t tp = 0;
  for (std::size_t rank = 0; rank < pool.size(); ++rank) {
    const Candidate& c = pool[rank];
    const AnnotationSet& ann = *truth.at(c.image->image_id);
    std::vector<bool>& used = claimed[c.image->image_id];
    const RleMask& mask = c.image->instances[c.instance].mask;

    double best_iou = -1.0;
    std::size_t best = used.size();
    for (std::size_t j = 0; j < ann.instances.size(); ++j) {
      if (used[j]) continue;
      const double iou = mask_iou(mask, ann.instances[j].mask);
      if (iou > best_iou) {
        best_iou = iou;
        best = j;
      }
    }
    const bool hit = best < used.size() && best_iou >= iou_threshold;
    if (hit) {
      used[best] = true;
      ++tp;
    }
    out.ranking.push_back({c.image->image_id, c.instance, c.confidence, hit,
                           static_cast<double>(tp) / static_cast<double>(rank + 1),
                           static_cast<double>(tp) / static_cast<double>(total_annotations)});
  }
  out.true_positives = tp;

  // Each true positive raises recall by exactly 1/N, so the area under the
  // interpolated curve is the mean envelope precision over true positives.
  double envelope = 0.0;
  double area = 0.0;
  for (std::size_t i = out.ranking.size(); i-- > 0;) {
    envelope = std::max(envelope, out.ranking[i].precision);
    if (out.ranking[i].true_positive) area += envelope;
  }
  const double ap = area / static_cast<double>(total_annotations);
  out.average_precision = ap;
  return out;
}

}  // namespace graffmap::detection
