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

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "graffmap/detection/detection_set.hpp"
#include "graffmap/util/random.hpp"

// Test-only reference implementations working on explicit pixel grids. They
// intentionally avoid the library's span arithmetic and interpolation code.
namespace graffmap::oracle {

using Pixels = std::vector<int>;  // row-major 0/1

inline Pixels expand(const detection::RleMask& m) {
  Pixels px;
  int value = 0;
  for (auto run : m.counts) {
    for (std::uint32_t k = 0; k < run; ++k) px.push_back(value);
    value = 1 - value;
  }
  return px;
}

inline detection::RleMask compress(const Pixels& px, std::uint32_t h, std::uint32_t w) {
  detection::RleMask m{h, w, {}};
  int value = 0;
  std::uint32_t run = 0;
  for (int p : px) {
    if (p != value) {
      m.counts.push_back(run);
      run = 0;
      value = p;
    }
    ++run;
  }
  m.counts.push_back(run);
  return m;
}

inline double union_fraction(const detection::DetectionSet& set, double threshold) {
  Pixels acc(std::size_t{set.width} * set.height, 0);
  for (const auto& inst : set.instances) {
    if (!(inst.confidence >= threshold)) continue;
    const Pixels px = expand(inst.mask);
    for (std::size_t i = 0; i < px.size(); ++i) acc[i] |= px[i];
  }
  long on = 0;
  for (int v : acc) on += v;
  return static_cast<double>(on) / static_cast<double>(acc.size());
}

inline double iou(const detection::RleMask& a, const detection::RleMask& b) {
  const Pixels pa = expand(a), pb = expand(b);
  long inter = 0, uni = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    inter += pa[i] & pb[i];
    uni += pa[i] | pb[i];
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

// Random mask made of a few axis-aligned rectangles (possibly empty).
inline detection::RleMask random_mask(util::Rng& rng, std::uint32_t h, std::uint32_t w,
                                      int max_rects = 3) {
  Pixels px(std::size_t{h} * w, 0);
  const int rects = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(max_rects + 1));
  for (int r = 0; r < rects; ++r) {
    const auto r0 = static_cast<std::uint32_t>(rng.next_u64() % h);
    const auto c0 = static_cast<std::uint32_t>(rng.next_u64() % w);
    const auto r1 = r0 + static_cast<std::uint32_t>(rng.next_u64() % (h - r0)) + 1;
    const auto c1 = c0 + static_cast<std::uint32_t>(rng.next_u64() % (w - c0)) + 1;
    for (auto y = r0; y < r1; ++y)
      for (auto x = c0; x < c1; ++x) px[std::size_t{y} * w + x] = 1;
  }
  return compress(px, h, w);
}

// Exhaustive precision/recall oracle: explicit ranking, greedy matching on
// pixel grids, VOC all-points interpolation via sentinel-padded arrays.
inline double average_precision(const std::vector<detection::DetectionSet>& dets,
                                const std::vector<detection::AnnotationSet>& anns,
                                double iou_threshold) {
  std::map<std::string, const detection::AnnotationSet*> by_id;
  int total = 0;
  for (const auto& a : anns) {
    by_id[a.image_id] = &a;
    total += static_cast<int>(a.instances.size());
  }
  std::vector<std::tuple<double, std::string, std::size_t, const detection::DetectionSet*>> ranked;
  for (const auto& d : dets)
    for (std::size_t i = 0; i < d.instances.size(); ++i)
      ranked.emplace_back(-d.instances[i].confidence, d.image_id, i, &d);
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x), std::get<2>(x)) <
           std::tie(std::get<0>(y), std::get<1>(y), std::get<2>(y));
  });

  std::map<std::string, std::vector<int>> used;
  for (const auto& a : anns) used[a.image_id].assign(a.instances.size(), 0);
  std::vector<double> precision, recall;
  int tp = 0, seen = 0;
  for (const auto& [neg_conf, image_id, idx, det] : ranked) {
    const auto& truth = *by_id.at(image_id);
    auto& flags = used[image_id];
    int best = -1;
    double best_iou = -1;
    for (std::size_t j = 0; j < truth.instances.size(); ++j) {
      if (flags[j]) continue;
      const double v = iou(det->instances[idx].mask, truth.instances[j].mask);
      if (v > best_iou) {
        best_iou = v;
        best = static_cast<int>(j);
      }
    }
    ++seen;
    if (best >= 0 && best_iou >= iou_threshold) {
      flags[static_cast<std::size_t>(best)] = 1;
      ++tp;
    }
    precision.push_back(static_cast<double>(tp) / seen);
    recall.push_back(static_cast<double>(tp) / total);
  }

  std::vector<double> mrec{0.0}, mpre{0.0};
  mrec.insert(mrec.end(), recall.begin(), recall.end());
  mpre.insert(mpre.end(), precision.begin(), precision.end());
  mrec.push_back(1.0);
  mpre.push_back(0.0);
  for (std::size_t i = mpre.size() - 1; i > 0; --i) mpre[i - 1] = std::max(mpre[i - 1], mpre[i]);
  double ap = 0.0;
  for (std::size_t i = 1; i < mrec.size(); ++i) {
    if (mrec[i] != mrec[i - 1]) ap += (mrec[i] - mrec[i - 1]) * mpre[i];
  }
  return ap;
}

}  // namespace graffmap::oracle
