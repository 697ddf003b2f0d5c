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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/detection/average_precision.hpp"
#include "graffmap/detection/detection_set.hpp"
#include "graffmap/geo/sampling.hpp"
#include "graffmap/metrics/aggregate.hpp"
#include "graffmap/metrics/io.hpp"
#include "graffmap/metrics/score.hpp"
#include "graffmap/pipeline/commands.hpp"
#include "graffmap/synth/field.hpp"
#include "graffmap/util/files.hpp"
#include "graffmap/util/random.hpp"
#include "support/detection_oracles.hpp"
#include "support/geo_fixtures.hpp"
#include "support/temp_dir.hpp"

namespace {

using namespace graffmap;
namespace fs = std::filesystem;

const fs::path kFixtures = GRAFFMAP_FIXTURE_DIR;

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0 = no runtime bound
  std::function<Outcome()> check;
};

// --- 1 ---------------------------------------------------------------------

Outcome grid_count() {
  const auto region = testing::make_rect("r", testing::kSaoPaulo, 1020, 1020);
  const auto n = geo::systematic_grid(region, 102.0).points.size();
  return {n == 121, fmt::format("{} points, expected 121", n)};
}

// --- 2 ---------------------------------------------------------------------

Outcome score_oracle() {
  util::Rng rng(20260101);
  constexpr double kThreshold = 0.5;
  std::size_t mismatches = 0, points = 0, regions = 0;
  for (int fixture = 0; fixture < 1000; ++fixture) {
    const std::size_t n_points = 1 + static_cast<std::size_t>(rng.uniform() * 50);
    const std::size_t n_regions = 1 + static_cast<std::size_t>(rng.uniform() * 3);
    const std::size_t min_views = static_cast<std::size_t>(rng.uniform() * 3);
    std::vector<metrics::LocationScore> scores;
    metrics::Assignment assignment;
    // Brute force: pixel-grid union per view, summed in view order; region
    // sums in point_id order.
    std::map<std::string, std::vector<std::pair<std::string, double>>> oracle_members;
    for (std::size_t p = 0; p < n_points; ++p) {
      // Shuffle ids so input order differs from point_id order.
      const std::string pid = geo::format_point_id((p * 7919) % 100003);
      const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 6);
      std::vector<metrics::ScoredView> views;
      double oracle_g = 0.0;
      std::size_t oracle_k = 0;
      for (std::size_t v = 0; v < k; ++v) {
        metrics::ScoredView sv;
        sv.record.spec = {pid, {0.0, 0.0}, 360.0 * static_cast<double>(v) / static_cast<double>(k)};
        if (rng.uniform() < 0.15) {
          sv.record.status = acquisition::ViewStatus::kNoImagery;
        } else {
          sv.record.status = acquisition::ViewStatus::kFetched;
          const std::uint32_t h = 4 + static_cast<std::uint32_t>(rng.uniform() * 12);
          const std::uint32_t w = 4 + static_cast<std::uint32_t>(rng.uniform() * 12);
          detection::DetectionSet d{"img", w, h, {}};
          const int n_inst = static_cast<int>(rng.uniform() * 4);
          for (int i = 0; i < n_inst; ++i) {
            d.instances.push_back({oracle::random_mask(rng, h, w, 3), rng.uniform()});
          }
          oracle_g += oracle::union_fraction(d, kThreshold);
          ++oracle_k;
          sv.detections = std::move(d);
        }
        views.push_back(std::move(sv));
      }
      const auto s = metrics::location_score(views, {kThreshold, false});
      ++points;
      if (s.g_value != oracle_g || s.k_actual != oracle_k || s.k_planned != k) ++mismatches;
      const std::string region = "r" + std::to_string(static_cast<std::size_t>(rng.uniform() * n_regions));
      assignment[pid] = region;
      if (oracle_k >= min_views) oracle_members[region].emplace_back(pid, oracle_g);
      scores.push_back(s);
    }
    const auto aggs = metrics::region_aggregate(scores, assignment, min_views);
    std::size_t expected_regions = 0;
    for (auto& [region, members] : oracle_members) {
      if (members.empty()) continue;
      ++expected_regions;
      std::sort(members.begin(), members.end());
      double sum = 0.0;
      for (const auto& [pid, g] : members) sum += g;
      const double mean = sum / static_cast<double>(members.size());
      const auto it = std::find_if(aggs.begin(), aggs.end(),
                                   [&](const auto& a) { return a.region_id == region; });
      ++regions;
      if (it == aggs.end() || it->g_region != mean || it->n != members.size()) ++mismatches;
    }
    if (aggs.size() != expected_regions) ++mismatches;
  }
  return {mismatches == 0,
          fmt::format("1000 fixtures, {} points, {} regions, {} mismatches", points, regions, mismatches)};
}

// --- 3 ---------------------------------------------------------------------

Outcome union_area() {
  util::Rng rng(99);
  std::size_t mismatches = 0;
  for (int c = 0; c < 1000; ++c) {
    const std::uint32_t h = 1 + static_cast<std::uint32_t>(rng.uniform() * 40);
    const std::uint32_t w = 1 + static_cast<std::uint32_t>(rng.uniform() * 40);
    detection::DetectionSet d{"img", w, h, {}};
    const int n = 1 + static_cast<int>(rng.uniform() * 6);
    for (int i = 0; i < n; ++i) d.instances.push_back({oracle::random_mask(rng, h, w, 4), rng.uniform()});
    const double t = rng.uniform();
    if (detection::area_fraction(d, t) != oracle::union_fraction(d, t)) ++mismatches;
  }
  return {mismatches == 0, fmt::format("1000 cases, {} mismatches", mismatches)};
}

// --- 4 ---------------------------------------------------------------------

Outcome ap_oracle() {
  util::Rng rng(4242);
  double worst = 0.0;
  int cases = 0;
  while (cases < 500) {
    const int n_images = 1 + static_cast<int>(rng.uniform() * 3);
    std::vector<detection::DetectionSet> dets;
    std::vector<detection::AnnotationSet> anns;
    int total = 0;
    for (int i = 0; i < n_images; ++i) {
      const std::string id = fmt::format("img{}", i);
      detection::AnnotationSet a{id, 10, 10, {}};
      const int na = static_cast<int>(rng.uniform() * 4);
      for (int j = 0; j < na; ++j) a.instances.push_back({oracle::random_mask(rng, 10, 10, 2)});
      detection::DetectionSet d{id, 10, 10, {}};
      const int nd = static_cast<int>(rng.uniform() * 5);
      for (int j = 0; j < nd; ++j) {
        // Mix near-copies of annotations with fresh masks; coarse
        // confidences force ties.
        auto mask = (na > 0 && rng.uniform() < 0.6)
                        ? a.instances[static_cast<std::size_t>(rng.uniform() * na)].mask
                        : oracle::random_mask(rng, 10, 10, 2);
        if (rng.uniform() < 0.3) {
          auto px = oracle::expand(mask);
          px[static_cast<std::size_t>(rng.uniform() * px.size())] ^= 1;
          mask = oracle::compress(px, 10, 10);
        }
        d.instances.push_back({mask, std::round(rng.uniform() * 10) / 10});
      }
      total += na;
      dets.push_back(std::move(d));
      anns.push_back(std::move(a));
    }
    if (total == 0) continue;
    ++cases;
    const double got = detection::average_precision(dets, anns);
    const double want = oracle::average_precision(dets, anns, 0.5);
    worst = std::max(worst, std::abs(got - want));
  }

  detection::AnnotationSet truth{"img", 12, 12, {}};
  detection::DetectionSet perfect{"img", 12, 12, {}};
  for (int j = 0; j < 4; ++j) {
    // Non-empty masks only: two empty masks have IoU 0 and never match.
    auto mask = oracle::random_mask(rng, 12, 12, 2);
    while (mask.counts.size() < 2) mask = oracle::random_mask(rng, 12, 12, 2);
    truth.instances.push_back({mask});
    perfect.instances.push_back({truth.instances.back().mask, 0.9 - 0.1 * j});
  }
  const std::vector<detection::DetectionSet> pd{perfect};
  const std::vector<detection::AnnotationSet> pa{truth};
  const double p = detection::average_precision(pd, pa);
  return {worst <= 1e-12 && p == 1.0,
          fmt::format("500 instances, max |diff| {:.3g}; perfect detector AP {}", worst, p)};
}

// --- 5 ---------------------------------------------------------------------

Outcome unbiasedness() {
  const auto field = synth::parse_field_json(util::read_file(kFixtures / "synth/standard_field.json"));
  const double truth = synth::true_region_mean(field, 5.0);
  const auto rows = synth::simulate_random_estimates(field, {0.0, 0.0, 0}, 100, 1, 1000);
  double mean = 0.0;
  for (const auto& r : rows) mean += r.estimate;
  mean /= static_cast<double>(rows.size());
  double ss = 0.0;
  for (const auto& r : rows) ss += (r.estimate - mean) * (r.estimate - mean);
  const double se = std::sqrt(ss / static_cast<double>(rows.size() - 1)) / std::sqrt(double(rows.size()));
  const double z = (mean - truth) / se;
  return {std::abs(z) <= 3.0,
          fmt::format("mean {:.6f} vs reference {:.6f}, {:+.2f} standard errors", mean, truth, z)};
}

// --- 6 ---------------------------------------------------------------------

Outcome coverage_bound() {
  // Extents are whole multiples of the spacing: with a partial last cell the
  // half-diagonal bound does not hold.
  util::Rng rng(606);
  double worst_ratio = 0.0;
  int failures = 0;
  for (int c = 0; c < 50; ++c) {
    const double s = rng.uniform(20.0, 200.0);
    const int cols = 1 + static_cast<int>(rng.uniform() * 20);
    const int rows = 1 + static_cast<int>(rng.uniform() * 20);
    const geo::GeoPoint center{rng.uniform(-60.0, 60.0), rng.uniform(-179.0, 179.0)};
    const auto region = testing::make_rect("r", center, cols * s, rows * s);
    const auto grid = geo::systematic_grid(region, s);
    const double radius = geo::coverage_radius(grid, region, 2000, 1000 + static_cast<std::uint64_t>(c));
    const double ratio = radius / (s * std::sqrt(2.0) / 2.0);
    worst_ratio = std::max(worst_ratio, ratio);
    failures += ratio > 1.01;
  }
  return {failures == 0,
          fmt::format("50 cases, worst radius / half-diagonal = {:.4f} (limit 1.01)", worst_ratio)};
}

// --- 7 ---------------------------------------------------------------------

Outcome end_to_end() {
  testing::TempDir tmp;
  auto config = pipeline::load_config(kFixtures / "toy/config.json");
  config.output_dir = tmp.path();
  pipeline::run_all(config);
  std::vector<std::string> differing;
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(kFixtures / "toy/golden")) {
    ++compared;
    const auto produced = tmp.path() / entry.path().filename();
    if (!fs::exists(produced) || util::read_file(produced) != util::read_file(entry.path())) {
      differing.push_back(entry.path().filename().string());
    }
  }
  std::string list;
  for (const auto& d : differing) list += " " + d;
  return {differing.empty() && compared > 0,
          fmt::format("{} golden files, {} differ{}", compared, differing.size(), list)};
}

// --- 8 ---------------------------------------------------------------------

Outcome rank_sanity() {
  testing::TempDir tmp;
  auto config = pipeline::load_config(kFixtures / "toy/config.json");
  config.output_dir = tmp.path();
  pipeline::run_all(config);
  const auto aggs = metrics::parse_aggregates_csv(util::read_file(tmp.path() / pipeline::files::kRegionsCsv));
  // Indicator built to fall as the graffiti level rises.
  metrics::IndicatorTable synthetic;
  for (const auto& a : aggs) synthetic[a.region_id] = 1.0 - a.g_region;
  const double rho = metrics::rank_correlation(aggs, synthetic);
  const auto shipped = nlohmann::json::parse(util::read_file(tmp.path() / pipeline::files::kCorrelation));
  const double rho_hdi = shipped["rho"].get<double>();
  return {rho <= -0.9 && rho_hdi <= -0.9,
          fmt::format("{} regions: synthetic indicator rho {:.4f}, fixture HDI rho {:.4f}", aggs.size(), rho,
                      rho_hdi)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "grid-count exactness", 1.0, grid_count},
      {2, "location and region score oracle equivalence", 10.0, score_oracle},
      {3, "union-area correctness", 10.0, union_area},
      {4, "average-precision oracle equivalence", 10.0, ap_oracle},
      {5, "estimator unbiasedness", 60.0, unbiasedness},
      {6, "systematic coverage bound", 30.0, coverage_bound},
      {7, "end-to-end determinism", 5.0, end_to_end},
      {8, "rank-correlation sanity", 0.0, rank_sanity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s <= 0.0 || secs < c.limit_s;
    const bool pass = out.ok && in_time;
    failed += !pass;
    const std::string timing = c.limit_s > 0.0 ? fmt::format("{:.3f} s (limit {} s)", secs, c.limit_s)
                                               : fmt::format("{:.3f} s", secs);
    fmt::print("{} criterion {}: {}: {}; {}\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail, timing);
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
