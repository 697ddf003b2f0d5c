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

#include <chrono>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "graffmap/error.hpp"
#include "graffmap/geo/io.hpp"
#include "graffmap/geo/projection.hpp"
#include "graffmap/geo/region.hpp"
#include "graffmap/geo/sampling.hpp"
#include "support/geo_fixtures.hpp"
#include "support/geo_oracles.hpp"

namespace graffmap::geo {
namespace {

using testing::kSaoPaulo;
using testing::make_local_polygon;
using testing::make_rect;

template <typename Fn>
ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected graffmap::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(ProjectionTest, EquatorEastOffset) {
  const auto proj = make_projection({0.0, 0.0});
  const Xy xy = proj.to_xy({0.0, 0.001});
  EXPECT_NEAR(xy.x, 111.32, 1e-9);
  EXPECT_EQ(xy.y, 0.0);
}

TEST(ProjectionTest, OriginMapsToZero) {
  const auto proj = make_projection(kSaoPaulo);
  EXPECT_EQ(proj.to_xy(kSaoPaulo), (Xy{0.0, 0.0}));
}

TEST(ProjectionTest, SixtyNorthHalvesLongitudeScale) {
  const auto proj = make_projection({60.0, 0.0});
  EXPECT_NEAR(proj.to_xy({60.0, 0.001}).x, 55.66, 1e-6);
  EXPECT_NEAR(proj.meters_per_deg_lon(), proj.meters_per_deg_lat() * 0.5, 1e-9);
}

TEST(ProjectionTest, RejectsPoles) {
  EXPECT_EQ(error_code_of([] { make_projection({89.0, 10.0}); }), ErrorCode::kPoleProximity);
  EXPECT_EQ(error_code_of([] { make_projection({-89.5, 10.0}); }), ErrorCode::kPoleProximity);
  EXPECT_NO_THROW(make_projection({88.9, 10.0}));
}

TEST(ProjectionTest, RejectsOutOfRangeOrigin) {
  EXPECT_EQ(error_code_of([] { make_projection({0.0, 181.0}); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(error_code_of([] { make_projection({NAN, 0.0}); }), ErrorCode::kInvalidArgument);
}

TEST(ProjectionTest, RoundTripWithin100Km) {
  util::Rng rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const GeoPoint origin{rng.uniform(-70, 70), rng.uniform(-170, 170)};
    const auto proj = make_projection(origin);
    const Xy offset{rng.uniform(-70'000, 70'000), rng.uniform(-70'000, 70'000)};
    const GeoPoint p = proj.from_xy(offset);
    const GeoPoint back = proj.from_xy(proj.to_xy(p));
    ASSERT_NEAR(back.lat, p.lat, 1e-9);
    ASSERT_NEAR(back.lon, p.lon, 1e-9);
  }
}

TEST(RegionTest, RejectsDegenerateRings) {
  const auto proj = make_projection(kSaoPaulo);
  auto p = [&](double x, double y) { return proj.from_xy({x, y}); };
  EXPECT_EQ(error_code_of([&] { RegionPolygon::create("a", {p(0, 0), p(1, 0)}); }),
            ErrorCode::kInvalidPolygon);
  // bow tie
  EXPECT_EQ(error_code_of([&] {
              RegionPolygon::create("b", {p(0, 0), p(10, 10), p(10, 0), p(0, 10)});
            }),
            ErrorCode::kInvalidPolygon);
  // collinear
  EXPECT_EQ(error_code_of([&] { RegionPolygon::create("c", {p(0, 0), p(5, 0), p(10, 0)}); }),
            ErrorCode::kInvalidPolygon);
  // explicit closure
  EXPECT_EQ(error_code_of([&] {
              RegionPolygon::create("d", {p(0, 0), p(10, 0), p(10, 10), p(0, 0)});
            }),
            ErrorCode::kInvalidPolygon);
  // spike folding back along an edge
  EXPECT_EQ(error_code_of([&] {
              RegionPolygon::create("e", {p(0, 0), p(10, 0), p(5, 0), p(5, 10)});
            }),
            ErrorCode::kInvalidPolygon);
}

TEST(PointInPolygonTest, SquareCentroidAndOutside) {
  const auto square = make_rect("sq", kSaoPaulo, 1000, 1000);
  EXPECT_TRUE(point_in_polygon(kSaoPaulo, square));
  const auto proj = square.projection();
  EXPECT_FALSE(point_in_polygon(proj.from_xy({510.0, 0.0}), square));
  EXPECT_FALSE(point_in_polygon(proj.from_xy({0.0, -510.0}), square));
}

TEST(PointInPolygonTest, BoundaryCountsAsInside) {
  const auto square = make_local_polygon("sq", kSaoPaulo,
                                         {{-500, -500}, {500, -500}, {500, 500}, {-500, 500}});
  for (const auto& v : square.exterior()) EXPECT_TRUE(point_in_polygon(v, square));
  const auto& proj = square.projection();
  const Xy a = proj.to_xy(square.exterior()[0]);
  const Xy b = proj.to_xy(square.exterior()[1]);
  EXPECT_TRUE(square.contains_local({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}));
}

TEST(PointInPolygonTest, HolesAreExcludedButTheirBoundaryIsNot) {
  const auto donut = make_local_polygon(
      "donut", kSaoPaulo, {{-500, -500}, {500, -500}, {500, 500}, {-500, 500}},
      {{{-100, -100}, {100, -100}, {100, 100}, {-100, 100}}});
  const auto& proj = donut.projection();
  const Xy center = proj.to_xy(make_projection(kSaoPaulo).from_xy({0, 0}));
  EXPECT_FALSE(donut.contains_local(center));
  EXPECT_TRUE(donut.contains_local({center.x + 300, center.y}));
  EXPECT_TRUE(point_in_polygon(donut.holes()[0][0], donut));
  EXPECT_NEAR(donut.area_m2(), 1e6 - 4e4, 1.0);
}

TEST(PointInPolygonTest, MatchesWindingNumberOracleOnRandomStarPolygons) {
  util::Rng rng(2024);
  int cases = 0;
  for (int poly_index = 0; poly_index < 20; ++poly_index) {
    const auto verts = testing::random_star_polygon(rng, 20, 2000.0);
    const auto region = make_local_polygon("star", kSaoPaulo, verts);
    std::vector<Xy> ring;
    for (const auto& v : region.exterior()) ring.push_back(region.projection().to_xy(v));
    for (int i = 0; i < 1000; ++i) {
      const GeoPoint p = make_projection(kSaoPaulo)
                             .from_xy({rng.uniform(-2100, 2100), rng.uniform(-2100, 2100)});
      const bool expected = oracle::inside_by_winding(region.projection().to_xy(p), ring);
      ASSERT_EQ(point_in_polygon(p, region), expected) << "polygon " << poly_index << " probe " << i;
      ++cases;
    }
  }
  EXPECT_GE(cases, 1000);
}

TEST(SystematicGridTest, TenTwentyMeterSquareHas121Points) {
  const auto region = make_rect("sq", kSaoPaulo, 1020, 1020);
  const auto start = std::chrono::steady_clock::now();
  const SampleSet sample = systematic_grid(region, 102.0);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_EQ(sample.points.size(), 121u);
  EXPECT_LT(elapsed, std::chrono::seconds(1));
  EXPECT_EQ(sample.region_id, "sq");
  EXPECT_EQ(std::get<SystematicScheme>(sample.scheme).spacing_m, 102.0);
}

TEST(SystematicGridTest, RectangleCountFormula) {
  util::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double w = rng.uniform(50, 3000);
    const double h = rng.uniform(50, 3000);
    const double s = rng.uniform(40, 400);
    const auto region = make_rect("r", kSaoPaulo, w, h);
    const auto& b = region.local_bounds();
    const std::size_t expected =
        static_cast<std::size_t>((std::floor(b.width() / s) + 1) * (std::floor(b.height() / s) + 1));
    ASSERT_EQ(systematic_grid(region, s).points.size(), expected)
        << "w=" << w << " h=" << h << " s=" << s;
  }
}

TEST(SystematicGridTest, RowMajorOrderAndSpacing) {
  const auto region = make_rect("r", kSaoPaulo, 1000, 500);
  const double s = 100.0;
  const auto sample = systematic_grid(region, s);
  const auto& proj = region.projection();
  ASSERT_EQ(sample.points.size(), 11u * 6u);
  for (std::size_t i = 1; i < sample.points.size(); ++i) {
    const Xy prev = proj.to_xy(sample.points[i - 1]);
    const Xy cur = proj.to_xy(sample.points[i]);
    if (i % 11 != 0) {
      EXPECT_NEAR(cur.y, prev.y, 1e-6);
      EXPECT_NEAR(cur.x - prev.x, s, s * 1e-3);
    } else {
      EXPECT_NEAR(cur.y - prev.y, s, s * 1e-3);
      EXPECT_LT(cur.x, prev.x);
    }
  }
  const Xy first = proj.to_xy(sample.points.front());
  EXPECT_NEAR(first.x, region.local_bounds().min_x, 1e-9);
  EXPECT_NEAR(first.y, region.local_bounds().min_y, 1e-9);
}

TEST(SystematicGridTest, EveryPointIsInsideItsRegion) {
  util::Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto region =
        make_local_polygon("star", kSaoPaulo, testing::random_star_polygon(rng, 15, 1500));
    const auto sample = systematic_grid(region, 75.0);
    for (const auto& p : sample.points) ASSERT_TRUE(point_in_polygon(p, region));
  }
}

TEST(SystematicGridTest, RegionSmallerThanSpacingYieldsAnchorOnly) {
  const auto region = make_rect("tiny", kSaoPaulo, 40, 30);
  const auto sample = systematic_grid(region, 102.0);
  ASSERT_EQ(sample.points.size(), 1u);
  const Xy anchor = region.projection().to_xy(sample.points[0]);
  EXPECT_NEAR(anchor.x, region.local_bounds().min_x, 1e-9);
  EXPECT_NEAR(anchor.y, region.local_bounds().min_y, 1e-9);
}

TEST(SystematicGridTest, EmptySampleWhenAnchorOutsideTinyRegion) {
  const auto triangle = make_local_polygon("tri", kSaoPaulo, {{0, 40}, {40, 0}, {40, 40}});
  EXPECT_EQ(error_code_of([&] { systematic_grid(triangle, 102.0); }), ErrorCode::kEmptySample);
  EXPECT_EQ(error_code_of([&] { systematic_grid(triangle, 0.0); }),
            ErrorCode::kInvalidArgument);
}

TEST(SystematicGridTest, CityScaleExtentGivesOrderOfHundredThousandPoints) {
  // Coarse outline of a ~1,500 km^2 municipality, elongated north-south.
  const auto city = make_local_polygon(
      "city", kSaoPaulo,
      {{-12000, -33000}, {2000, -34000}, {9000, -20000}, {16000, -2000}, {24000, 6000},
       {18000, 20000}, {4000, 24000}, {-14000, 20000}, {-20000, 6000}, {-16000, -12000}});
  const auto start = std::chrono::steady_clock::now();
  const auto sample = systematic_grid(city, 102.0);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  EXPECT_GT(sample.points.size(), 50'000u);
  EXPECT_LT(sample.points.size(), 500'000u);
  EXPECT_NEAR(static_cast<double>(sample.points.size()), city.area_m2() / (102.0 * 102.0),
              0.01 * city.area_m2() / (102.0 * 102.0));
  EXPECT_LT(elapsed, std::chrono::seconds(5));
}

TEST(RandomSampleTest, DeterministicForSeed) {
  const auto region = make_rect("r", kSaoPaulo, 800, 600);
  const auto a = random_sample(region, 5, 42);
  const auto b = random_sample(region, 5, 42);
  ASSERT_EQ(a.points.size(), 5u);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(std::get<RandomScheme>(a.scheme), (RandomScheme{5, 42}));
}

TEST(RandomSampleTest, DistinctSeedsGiveDistinctPoints) {
  const auto region = make_rect("r", kSaoPaulo, 800, 600);
  std::set<std::vector<std::pair<double, double>>> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    std::vector<std::pair<double, double>> key;
    for (const auto& p : random_sample(region, 64, seed).points) key.emplace_back(p.lat, p.lon);
    seen.insert(key);
  }
  EXPECT_EQ(seen.size(), 64u);
}

TEST(RandomSampleTest, UniformMeanOnSquare) {
  const auto region = make_rect("unit", kSaoPaulo, 1000, 1000);
  const std::size_t n = 100'000;
  const auto sample = random_sample(region, n, 99);
  const auto& b = region.local_bounds();
  double sum = 0.0;
  for (const auto& p : sample.points) {
    const Xy xy = region.projection().to_xy(p);
    sum += (xy.x - b.min_x) / b.width();
  }
  const double sigma = 1.0 / std::sqrt(12.0);
  EXPECT_NEAR(sum / n, 0.5, 3 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST(RandomSampleTest, LShapeHalvesProportionalToArea) {
  // Bottom bar 2000x1000 (area 2e6), top-left block 1000x1000 (area 1e6).
  const auto region = make_local_polygon(
      "L", kSaoPaulo, {{0, 0}, {2000, 0}, {2000, 1000}, {1000, 1000}, {1000, 2000}, {0, 2000}});
  const std::size_t n = 10'000;
  const auto sample = random_sample(region, n, 3);
  const auto origin = make_projection(kSaoPaulo);
  std::size_t bottom = 0;
  for (const auto& p : sample.points) {
    ASSERT_TRUE(point_in_polygon(p, region));
    if (origin.to_xy(p).y < 1000.0) ++bottom;
  }
  const double expected = 2.0 / 3.0;
  const double se = std::sqrt(expected * (1 - expected) / n);
  EXPECT_NEAR(static_cast<double>(bottom) / n, expected, 3 * se);
}

TEST(RandomSampleTest, SliverRegionExhaustsRejectionBudget) {
  const auto sliver =
      make_local_polygon("sliver", kSaoPaulo, {{0, 0}, {1000, 1000}, {1000, 999.9999}});
  EXPECT_EQ(error_code_of([&] { random_sample(sliver, 10, 1); }),
            ErrorCode::kRejectionBudgetExceeded);
  const auto square = make_rect("r", kSaoPaulo, 10, 10);
  EXPECT_EQ(error_code_of([&] { random_sample(square, 0, 1); }), ErrorCode::kInvalidArgument);
}

TEST(CoverageRadiusTest, GridBoundedByHalfCellDiagonal) {
  const double s = 100.0;
  const auto region = make_rect("r", kSaoPaulo, 1000, 700);
  const auto grid = systematic_grid(region, s);
  const double radius = coverage_radius(grid, region, 5000, 17);
  EXPECT_LE(radius, s * std::sqrt(2.0) / 2 * 1.01);
  EXPECT_GT(radius, s * 0.5);
}

TEST(CoverageRadiusTest, SampleEqualToProbeIsZero) {
  const auto region = make_rect("r", kSaoPaulo, 300, 300);
  const auto single = random_sample(region, 1, 1234);
  EXPECT_EQ(coverage_radius(single, region, 1, 1234), 0.0);
}

TEST(CoverageRadiusTest, RandomSamplesCoverWorseThanGrid) {
  const auto region = make_rect("r", kSaoPaulo, 1000, 1000);
  const auto grid = systematic_grid(region, 100.0);
  int random_worse = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rnd = random_sample(region, grid.points.size(), 1000 + seed);
    const std::uint64_t probe_seed = 5000 + seed;
    const double r_grid = coverage_radius(grid, region, 1000, probe_seed);
    const double r_rand = coverage_radius(rnd, region, 1000, probe_seed);
    if (r_rand >= r_grid) ++random_worse;
  }
  EXPECT_GE(random_worse, 95);
}

TEST(GeoIoTest, ParsesFeatureCollectionWithIdsAndMultiPolygons) {
  const std::string doc = R"({
    "type": "FeatureCollection",
    "features": [
      {"type": "Feature", "properties": {"id": "centro"},
       "geometry": {"type": "Polygon", "coordinates":
         [[[-46.64, -23.56], [-46.63, -23.56], [-46.63, -23.55], [-46.64, -23.55], [-46.64, -23.56]]]}},
      {"type": "Feature", "properties": {"name": "no id"},
       "geometry": {"type": "MultiPolygon", "coordinates": [
         [[[-46.62, -23.56], [-46.61, -23.56], [-46.61, -23.55]]],
         [[[-46.60, -23.56], [-46.59, -23.56], [-46.59, -23.55]]]]}},
      {"type": "Feature", "properties": {"id": 7},
       "geometry": {"type": "Polygon", "coordinates":
         [[[-46.58, -23.56], [-46.57, -23.56], [-46.57, -23.55]]]}}
    ]})";
  const auto regions = parse_regions_geojson(doc);
  ASSERT_EQ(regions.size(), 4u);
  EXPECT_EQ(regions[0].id(), "centro");
  EXPECT_EQ(regions[0].exterior().size(), 4u);
  EXPECT_EQ(regions[0].exterior()[0], (GeoPoint{-23.56, -46.64}));
  EXPECT_EQ(regions[1].id(), "1");
  EXPECT_EQ(regions[2].id(), "1");
  EXPECT_EQ(regions[3].id(), "7");
}

TEST(GeoIoTest, RejectsUnsupportedGeometry) {
  EXPECT_EQ(error_code_of([] {
              parse_regions_geojson(R"({"type":"Point","coordinates":[0,0]})");
            }),
            ErrorCode::kParse);
  EXPECT_EQ(error_code_of([] { parse_regions_geojson("{not json"); }), ErrorCode::kParse);
}

TEST(GeoIoTest, SampleCsvRoundTripIsExact) {
  const auto region = make_rect("r", kSaoPaulo, 900, 900);
  const auto sample = random_sample(region, 50, 77);
  const std::string csv = sample_to_csv(sample);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "point_id,lat,lon");
  EXPECT_EQ(parse_sample_csv(csv), sample.points);
  EXPECT_NE(csv.find("\n000049,"), std::string::npos);
}

TEST(GeoIoTest, SampleCsvRejectsOutOfSequenceIds) {
  EXPECT_EQ(error_code_of([] { parse_sample_csv("point_id,lat,lon\n000001,0,0\n"); }),
            ErrorCode::kParse);
  EXPECT_EQ(error_code_of([] { parse_sample_csv("id,lat,lon\n"); }), ErrorCode::kParse);
}

TEST(GeoIoTest, SampleGeoJsonListsPointsWithIds) {
  const auto region = make_rect("r", kSaoPaulo, 250, 250);
  const auto grid = systematic_grid(region, 102.0);
  const std::string doc = sample_to_geojson(grid);
  EXPECT_NE(doc.find("\"point_id\": \"000008\""), std::string::npos);
  EXPECT_NE(doc.find("\"systematic\""), std::string::npos);
}

}  // namespace
}  // namespace graffmap::geo
