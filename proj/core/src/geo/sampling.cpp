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

#include "graffmap/geo/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "graffmap/error.hpp"
#include "graffmap/util/random.hpp"

namespace graffmap::geo {
namespace {

constexpr std::uint64_t kRejectionBudget = 1'000'000;
constexpr double kMinAcceptanceRatio = 1e-6;

// Number of grid nodes along an extent, tolerant to the last node landing a
// rounding error short of the far edge.
std::size_t nodes_along(double extent, double spacing) {
  return static_cast<std::size_t>(std::floor(extent / spacing + 1e-9)) + 1;
}

}  // namespace

std::string format_point_id(std::size_t index) { return fmt::format("{:06d}", index); }

std::string SampleSet::point_id(std::size_t index) const { return format_point_id(index); }

SampleSet systematic_grid(const RegionPolygon& region, double spacing_m) {
  if (!(spacing_m > 0.0) || !std::isfinite(spacing_m)) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("grid spacing must be positive, got {}", spacing_m));
  }
  const Bounds& b = region.local_bounds();
  const std::size_t cols = nodes_along(b.width(), spacing_m);
  const std::size_t rows = nodes_along(b.height(), spacing_m);

  SampleSet out{SystematicScheme{spacing_m}, region.id(), {}};
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = b.min_y + static_cast<double>(r) * spacing_m;
    for (std::size_t c = 0; c < cols; ++c) {
      const Xy node{b.min_x + static_cast<double>(c) * spacing_m, y};
      if (region.contains_local(node)) {
        out.points.push_back(region.projection().from_xy(node));
      }
    }
  }
  if (out.points.empty()) {
    throw Error(ErrorCode::kEmptySample,
                fmt::format("no {} m grid node falls inside region '{}'", spacing_m,
                            region.id()));
  }
  return out;
}

SampleSet random_sample(const RegionPolygon& region, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "random sample size must be >= 1");
  const Bounds& b = region.local_bounds();
  util::Rng rng(seed);

  SampleSet out{RandomScheme{n, seed}, region.id(), {}};
  out.points.reserve(n);
  std::uint64_t rejected = 0;
  while (out.points.size() < n) {
    // Draw order (x then y) is part of the reproducibility contract.
    const double x = rng.uniform(b.min_x, b.max_x);
    const double y = rng.uniform(b.min_y, b.max_y);
    const Xy candidate{x, y};
    if (region.contains_local(candidate)) {
      out.points.push_back(region.projection().from_xy(candidate));
      continue;
    }
    ++rejected;
    if (rejected >= kRejectionBudget) {
      const double ratio = static_cast<double>(out.points.size()) /
                           static_cast<double>(out.points.size() + rejected);
      if (ratio < kMinAcceptanceRatio) {
        throw Error(ErrorCode::kRejectionBudgetExceeded,
                    fmt::format("region '{}' covers less than 1e-6 of its bounding box "
                                "({} accepted after {} rejections)",
                                region.id(), out.points.size(), rejected));
      }
    }
  }
  return out;
}

double coverage_radius(const SampleSet& sample, const RegionPolygon& region,
                       std::size_t probe_n, std::uint64_t seed) {
  if (sample.points.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "coverage_radius needs a non-empty sample");
  }
  const auto& proj = region.projection();
  std::vector<Xy> sites;
  sites.reserve(sample.points.size());
  for (const auto& p : sample.points) sites.push_back(proj.to_xy(p));

  const SampleSet probes = random_sample(region, probe_n, seed);
  double worst = 0.0;
  for (const auto& probe_geo : probes.points) {
    const Xy probe = proj.to_xy(probe_geo);
    double nearest2 = std::numeric_limits<double>::infinity();
    for (const auto& s : sites) {
      const double dx = probe.x - s.x;
      const double dy = probe.y - s.y;
      nearest2 = std::min(nearest2, dx * dx + dy * dy);
    }
    worst = std::max(worst, nearest2);
  }
  return std::sqrt(worst);
}

}  // namespace graffmap::geo
