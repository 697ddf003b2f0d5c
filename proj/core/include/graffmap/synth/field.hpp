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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "graffmap/geo/region.hpp"
#include "graffmap/geo/sampling.hpp"
#include "graffmap/metrics/score.hpp"

namespace graffmap::synth {

struct GaussianComponent {
  geo::GeoPoint center;
  double sigma_m = 1.0;
  double amplitude = 0.0;
};

// Ground-truth graffiti intensity: baseline plus isotropic Gaussian bumps,
// with distances measured in the region's local projection.
class IntensityField {
 public:
  // Throws Error(kInvalidArgument) for a negative baseline or amplitude, or a
  // non-positive sigma.
  IntensityField(geo::RegionPolygon region, std::vector<GaussianComponent> components,
                 double baseline);

  const geo::RegionPolygon& region() const { return region_; }
  const std::vector<GaussianComponent>& components() const { return components_; }
  double baseline() const { return baseline_; }

  double intensity(const geo::GeoPoint& p) const;
  double intensity_local(const geo::Xy& p) const;

 private:
  geo::RegionPolygon region_;
  std::vector<GaussianComponent> components_;
  std::vector<geo::Xy> centers_xy_;
  double baseline_;
};

// Field definition as JSON:
// {"region": <GeoJSON resolving to one polygon>, "baseline": b,
//  "components": [{"lat", "lon", "sigma_m", "amplitude"}, ...]}
// Throws Error(kParse) on malformed input.
IntensityField parse_field_json(std::string_view text);

inline constexpr std::size_t kMinQuadratureNodes = 1000;

// Mean intensity over cell-centered nodes of a grid that tiles the region's
// bounding box with spacing at most `quadrature_spacing_m`, keeping nodes
// inside the region. Throws
// Error(kQuadratureTooCoarse) when fewer than kMinQuadratureNodes fall inside.
double true_region_mean(const IntensityField& field, double quadrature_spacing_m);

// Perturbs true intensities rather than masks.
struct SimulatedDetector {
  double noise_sd = 0.0;
  // With this probability a location gains a spurious Uniform[0, 1) area.
  double false_positive_rate = 0.0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kSimulatedViews = 4;

// g_value = clamp(intensity + noise, 0, 4), with k_actual = k_planned = 4.
// Point i draws from a stream derived from (detector.seed, i).
std::vector<metrics::LocationScore> sample_scores(const IntensityField& field,
                                                  const geo::SampleSet& sample,
                                                  const SimulatedDetector& detector);

struct SimulationRow {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double estimate = 0.0;
};

// One region-mean estimate per seed in [first_seed, first_seed + trials),
// each from random_sample(region, n, seed) scored with the detector reseeded
// from the same seed.
std::vector<SimulationRow> simulate_random_estimates(const IntensityField& field,
                                                     const SimulatedDetector& detector,
                                                     std::size_t n, std::uint64_t first_seed,
                                                     std::size_t trials);

// Region-mean estimate from a systematic grid at spacing_m.
double systematic_estimate(const IntensityField& field, const SimulatedDetector& detector,
                           double spacing_m);

// seed,n,estimate
std::string simulation_to_csv(std::span<const SimulationRow> rows);

}  // namespace graffmap::synth
