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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "graffmap/detection/average_precision.hpp"
#include "graffmap/detection/detection_set.hpp"
#include "graffmap/detection/rle.hpp"
#include "graffmap/geo/projection.hpp"
#include "graffmap/geo/region.hpp"
#include "graffmap/geo/sampling.hpp"
#include "graffmap/metrics/aggregate.hpp"
#include "graffmap/metrics/score.hpp"
#include "graffmap/util/random.hpp"

namespace {

using namespace graffmap;

const geo::GeoPoint kCenter{-23.55, -46.63};

// Regular n-gon of the given radius, in metres around kCenter.
geo::RegionPolygon polygon(int vertices, double radius_m) {
  const auto proj = geo::make_projection(kCenter);
  geo::Ring ring;
  for (int i = 0; i < vertices; ++i) {
    const double a = 2.0 * std::numbers::pi * i / vertices;
    ring.push_back(proj.from_xy({radius_m * std::cos(a), radius_m * std::sin(a)}));
  }
  return geo::RegionPolygon::create("r", std::move(ring));
}

detection::RleMask random_mask(util::Rng& rng, std::uint32_t h, std::uint32_t w) {
  detection::BitGrid g(h, w);
  const int rects = 1 + static_cast<int>(rng.next_u64() % 3);
  for (int r = 0; r < rects; ++r) {
    const auto r0 = static_cast<std::uint32_t>(rng.next_u64() % h);
    const auto c0 = static_cast<std::uint32_t>(rng.next_u64() % w);
    const auto r1 = r0 + static_cast<std::uint32_t>(rng.next_u64() % (h - r0)) + 1;
    const auto c1 = c0 + static_cast<std::uint32_t>(rng.next_u64() % (w - c0)) + 1;
    for (auto y = r0; y < r1; ++y)
      for (auto x = c0; x < c1; ++x) g.set(y, x);
  }
  return detection::encode_mask(g);
}

detection::DetectionSet random_detections(util::Rng& rng, const std::string& id, std::uint32_t h,
                                          std::uint32_t w, int n) {
  detection::DetectionSet d{id, w, h, {}};
  for (int i = 0; i < n; ++i) d.instances.push_back({random_mask(rng, h, w), rng.uniform()});
  return d;
}

void BM_SystematicGrid(benchmark::State& state) {
  const auto region = polygon(64, static_cast<double>(state.range(0)));
  std::size_t points = 0;
  for (auto _ : state) {
    const auto grid = geo::systematic_grid(region, 102.0);
    points = grid.points.size();
    benchmark::DoNotOptimize(points);
  }
  state.counters["points"] = static_cast<double>(points);
}
BENCHMARK(BM_SystematicGrid)->Arg(1000)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_PointInPolygon(benchmark::State& state) {
  const auto region = polygon(static_cast<int>(state.range(0)), 1000.0);
  util::Rng rng(1);
  std::vector<geo::GeoPoint> probes;
  for (int i = 0; i < 1024; ++i) {
    probes.push_back({kCenter.lat + rng.uniform(-0.01, 0.01), kCenter.lon + rng.uniform(-0.01, 0.01)});
  }
  for (auto _ : state) {
    int inside = 0;
    for (const auto& p : probes) inside += geo::point_in_polygon(p, region);
    benchmark::DoNotOptimize(inside);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(probes.size()));
}
BENCHMARK(BM_PointInPolygon)->Arg(4)->Arg(64)->Arg(1024);

void BM_AreaFraction(benchmark::State& state) {
  util::Rng rng(2);
  const auto set = random_detections(rng, "img", 640, 640, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(detection::area_fraction(set, 0.0));
}
BENCHMARK(BM_AreaFraction)->Arg(1)->Arg(8)->Arg(32);

void BM_AveragePrecision(benchmark::State& state) {
  util::Rng rng(3);
  std::vector<detection::DetectionSet> dets;
  std::vector<detection::AnnotationSet> anns;
  for (int i = 0; i < state.range(0); ++i) {
    const std::string id = "img" + std::to_string(i);
    detection::AnnotationSet a{id, 160, 160, {}};
    for (int j = 0; j < 3; ++j) a.instances.push_back({random_mask(rng, 160, 160)});
    dets.push_back(random_detections(rng, id, 160, 160, 4));
    anns.push_back(std::move(a));
  }
  for (auto _ : state) benchmark::DoNotOptimize(detection::average_precision(dets, anns));
}
BENCHMARK(BM_AveragePrecision)->Arg(16)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ScoreAndAggregate(benchmark::State& state) {
  util::Rng rng(4);
  const auto n_points = static_cast<std::size_t>(state.range(0));
  std::vector<std::vector<metrics::ScoredView>> per_point;
  metrics::Assignment assignment;
  for (std::size_t p = 0; p < n_points; ++p) {
    const auto pid = geo::format_point_id(p);
    std::vector<metrics::ScoredView> views;
    for (int v = 0; v < 4; ++v) {
      metrics::ScoredView sv;
      sv.record.spec = {pid, kCenter, 90.0 * v};
      sv.record.status = acquisition::ViewStatus::kFetched;
      sv.detections = random_detections(rng, pid, 64, 64, 2);
      views.push_back(std::move(sv));
    }
    per_point.push_back(std::move(views));
    assignment[pid] = "d" + std::to_string(p % 32);
  }
  for (auto _ : state) {
    std::vector<metrics::LocationScore> scores;
    scores.reserve(n_points);
    for (const auto& views : per_point) scores.push_back(metrics::location_score(views));
    benchmark::DoNotOptimize(metrics::region_aggregate(scores, assignment));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n_points));
}
BENCHMARK(BM_ScoreAndAggregate)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
