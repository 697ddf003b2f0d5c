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

#include "graffmap/metrics/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "graffmap/error.hpp"

namespace graffmap::metrics {

std::vector<RegionAggregate> region_aggregate(std::span<const LocationScore> scores,
                                              const Assignment& assignment,
                                              std::size_t min_views) {
  std::vector<const LocationScore*> ordered;
  ordered.reserve(scores.size());
  for (const auto& s : scores) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->point_id < b->point_id; });

  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> acc;
  for (const auto* s : ordered) {
    const auto it = assignment.find(s->point_id);
    if (it == assignment.end()) {
      throw Error(ErrorCode::kUnassignedPoint,
                  fmt::format("point '{}' is not assigned to a region", s->point_id));
    }
    if (s->k_actual < min_views) continue;
    auto& a = acc[it->second];
    a.sum += s->g_value;
    ++a.n;
  }

  std::vector<RegionAggregate> out;
  for (const auto& [id, a] : acc) {
    if (a.n == 0) continue;
    out.push_back({id, a.sum / static_cast<double>(a.n), a.n, 0});
  }
  return out;
}

Assignment assign_districts(const geo::SampleSet& sample,
                            std::span<const geo::RegionPolygon> districts) {
  Assignment out;
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    for (const auto& d : districts) {
      if (geo::point_in_polygon(sample.points[i], d)) {
        out.emplace(sample.point_id(i), d.id());
        break;
      }
    }
  }
  return out;
}

std::vector<RegionAggregate> log_class_breaks(std::vector<RegionAggregate> aggregates,
                                              int n_classes, double epsilon) {
  if (n_classes < 2) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("n_classes {} < 2", n_classes));
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("epsilon {} must be positive", epsilon));
  }
  if (aggregates.empty()) return aggregates;
  std::vector<double> logs;
  logs.reserve(aggregates.size());
  for (const auto& a : aggregates) logs.push_back(std::log(a.g_region + epsilon));
  const auto [lo_it, hi_it] = std::minmax_element(logs.begin(), logs.end());
  const double lo = *lo_it;
  const double width = *hi_it - lo;
  for (std::size_t i = 0; i < aggregates.size(); ++i) {
    if (!(width > 0.0)) {
      aggregates[i].class_index = 0;
      continue;
    }
    const double t = (logs[i] - lo) / width;
    aggregates[i].class_index = std::clamp(static_cast<int>(std::floor(t * n_classes)), 0, n_classes - 1);
  }
  return aggregates;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double rank_correlation(std::span<const RegionAggregate> aggregates,
                        const IndicatorTable& indicator) {
  std::vector<double> g, v;
  for (const auto& a : aggregates) {
    const auto it = indicator.find(a.region_id);
    if (it == indicator.end()) continue;
    if (!std::isfinite(it->second)) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("indicator for '{}' is not finite", a.region_id));
    }
    g.push_back(a.g_region);
    v.push_back(it->second);
  }
  if (g.size() < 3) {
    throw Error(ErrorCode::kInsufficientOverlap,
                fmt::format("{} regions in common with the indicator, need at least 3", g.size()));
  }
  const auto rg = average_ranks(g);
  const auto rv = average_ranks(v);
  const double mean = (static_cast<double>(g.size()) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rg.size(); ++i) {
    const double dx = rg[i] - mean;
    const double dy = rv[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kDegenerateRanks, "rank correlation undefined for constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace graffmap::metrics
