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

#include "graffmap/synth/field.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "graffmap/error.hpp"
#include "graffmap/geo/io.hpp"
#include "graffmap/metrics/aggregate.hpp"
#include "graffmap/util/random.hpp"
#include "graffmap/util/text.hpp"

namespace graffmap::synth {

IntensityField::IntensityField(geo::RegionPolygon region,
                               std::vector<GaussianComponent> components, double baseline)
    : region_(std::move(region)), components_(std::move(components)), baseline_(baseline) {
  if (!(baseline >= 0.0) || !std::isfinite(baseline)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("baseline {} must be >= 0", baseline));
  }
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    geo::validate(c.center);
    if (!(c.sigma_m > 0.0) || !std::isfinite(c.sigma_m)) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("component {}: sigma_m {} must be positive", i, c.sigma_m));
    }
    if (!(c.amplitude >= 0.0) || !std::isfinite(c.amplitude)) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("component {}: amplitude {} must be >= 0", i, c.amplitude));
    }
    centers_xy_.push_back(region_.projection().to_xy(c.center));
  }
}

double IntensityField::intensity_local(const geo::Xy& p) const {
  double v = baseline_;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const double dx = p.x - centers_xy_[i].x;
    const double dy = p.y - centers_xy_[i].y;
    const double s = components_[i].sigma_m;
    v += components_[i].amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * s * s));
  }
  return v;
}

double IntensityField::intensity(const geo::GeoPoint& p) const {
  return intensity_local(region_.projection().to_xy(p));
}

IntensityField parse_field_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    auto regions = geo::parse_regions_geojson(doc.at("region").dump());
    if (regions.size() != 1) {
      throw Error(ErrorCode::kParse,
                  fmt::format("field: /region must hold exactly one polygon, found {}",
                              regions.size()));
    }
    std::vector<GaussianComponent> comps;
    if (doc.contains("components")) {
      for (const auto& c : doc.at("components")) {
        comps.push_back({{c.at("lat").get<double>(), c.at("lon").get<double>()},
                         c.at("sigma_m").get<double>(),
                         c.at("amplitude").get<double>()});
      }
    }
    return IntensityField(std::move(regions.front()), std::move(comps),
                          doc.value("baseline", 0.0));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, fmt::format("field: {}", e.what()));
  }
}

double true_region_mean(const IntensityField& field, double quadrature_spacing_m) {
  const double s = quadrature_spacing_m;
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("quadrature spacing {} must be positive", s));
  }
  const auto& region = field.region();
  const auto& b = region.local_bounds();
  // Cells tile the bounding box exactly; per-axis spacing is at most s.
  const auto nx = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(b.width() / s)));
  const auto ny = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(b.height() / s)));
  const double sx = b.width() / static_cast<double>(nx);
  const double sy = b.height() / static_cast<double>(ny);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 0; j < ny; ++j) {
    const double y = b.min_y + (static_cast<double>(j) + 0.5) * sy;
    for (std::size_t i = 0; i < nx; ++i) {
      const geo::Xy p{b.min_x + (static_cast<double>(i) + 0.5) * sx, y};
      if (!region.contains_local(p)) continue;
      sum += field.intensity_local(p) - field.baseline();
      ++count;
    }
  }
  if (count < kMinQuadratureNodes) {
    throw Error(ErrorCode::kQuadratureTooCoarse,
                fmt::format("spacing {} m leaves {} quadrature nodes, need {}", s, count,
                            kMinQuadratureNodes));
  }
  // Baseline added last so a constant field integrates exactly.
  return field.baseline() + sum / static_cast<double>(count);
}

std::vector<metrics::LocationScore> sample_scores(const IntensityField& field,
                                                  const geo::SampleSet& sample,
                                                  const SimulatedDetector& detector) {
  if (!(detector.noise_sd >= 0.0) || !std::isfinite(detector.noise_sd) ||
      !(detector.false_positive_rate >= 0.0 && detector.false_positive_rate <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "detector: noise_sd must be >= 0 and rate in [0, 1]");
  }
  constexpr double k = static_cast<double>(kSimulatedViews);
  std::vector<metrics::LocationScore> out;
  out.reserve(sample.points.size());
  for (std::size_t i = 0; i < sample.points.size(); ++i) {
    util::Rng rng(util::derive_seed(detector.seed, i));
    double g = field.intensity(sample.points[i]);
    if (detector.noise_sd > 0.0) g += detector.noise_sd * rng.normal();
    if (detector.false_positive_rate > 0.0 && rng.uniform() < detector.false_positive_rate) {
      g += rng.uniform();
    }
    metrics::LocationScore s;
    s.point_id = sample.point_id(i);
    s.location = sample.points[i];
    s.g_value = std::clamp(g, 0.0, k);
    s.k_actual = kSimulatedViews;
    s.k_planned = kSimulatedViews;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

double mean_estimate(const std::vector<metrics::LocationScore>& scores) {
  metrics::Assignment all;
  for (const auto& s : scores) all.emplace(s.point_id, "region");
  const auto agg = metrics::region_aggregate(scores, all);
  if (agg.empty()) throw Error(ErrorCode::kEmptySample, "no scored locations");
  return agg.front().g_region;
}

}  // namespace

std::vector<SimulationRow> simulate_random_estimates(const IntensityField& field,
                                                     const SimulatedDetector& detector,
                                                     std::size_t n, std::uint64_t first_seed,
                                                     std::size_t trials) {
  std::vector<SimulationRow> rows;
  rows.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = first_seed + t;
    const auto sample = geo::random_sample(field.region(), n, seed);
    SimulatedDetector d = detector;
    d.seed = util::derive_seed(detector.seed, seed);
    rows.push_back({seed, n, mean_estimate(sample_scores(field, sample, d))});
  }
  return rows;
}

double systematic_estimate(const IntensityField& field, const SimulatedDetector& detector,
                           double spacing_m) {
  return mean_estimate(sample_scores(field, geo::systematic_grid(field.region(), spacing_m), detector));
}

std::string simulation_to_csv(std::span<const SimulationRow> rows) {
  std::string out = "seed,n,estimate\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{}\n", r.seed, r.n, util::format_real(r.estimate));
  }
  return out;
}

}  // namespace graffmap::synth
