#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "horobm/region.hpp"
#include "support/oracles.hpp"

using namespace horobm;
using namespace horobm::testutil;

namespace {

RegionSpec disc_spec(double cx, double cy, double r, double grid_h = 0.005) {
  RegionSpec spec;
  spec.discs.push_back({cx, cy, r});
  spec.grid_h = grid_h;
  return spec;
}

double root_sum(double a_area, double b_area, double lambda) {
  return (1.0 - lambda) * std::sqrt(a_area) + lambda * std::sqrt(b_area);
}

}  // namespace

TEST_CASE("rasterized disc area converges to the closed form") {
  const double target = disc_area(1.0);
  const double coarse = area(rasterize(disc_spec(0.0, 0.0, 1.0), 0.02));
  const double mid = area(rasterize(disc_spec(0.0, 0.0, 1.0), 0.01));
  const double fine = area(rasterize(disc_spec(0.0, 0.0, 1.0), 0.005));
  CHECK(mid == doctest::Approx(target).epsilon(0.01));
  CHECK(fine == doctest::Approx(target).epsilon(0.01));
  CHECK(std::abs(fine - target) <= std::abs(coarse - target) + 1e-12);

  CHECK(area(rasterize(disc_spec(0.0, 0.0, 2.0), 0.005)) ==
        doctest::Approx(17.3553873818).epsilon(0.01));
}

TEST_CASE("rasterization rejects bad specs") {
  RegionSpec empty;
  CHECK_THROWS_AS(rasterize(empty, 0.01), error);
  RegionSpec nonpos = disc_spec(0.0, 0.0, -1.0);
  CHECK_THROWS_AS(rasterize(nonpos, 0.01), error);
  RegionSpec outside;
  outside.cells.emplace_back(0.9995, 0.0);
  CHECK_THROWS_AS(rasterize(outside, 0.01), error);
}

TEST_CASE("area is monotone and subadditive over unions") {
  Region small = rasterize(disc_spec(0.0, 0.0, 1.0), 0.01);
  RegionSpec two = disc_spec(0.0, 0.0, 1.0, 0.01);
  two.discs.push_back({0.5, 0.0, 1.0});
  Region both = rasterize(two, 0.01);
  Region other = rasterize(disc_spec(0.5, 0.0, 1.0), 0.01);
  CHECK(area(both) >= area(small));
  CHECK(area(both) <= area(small) + area(other) + 1e-9);
}

TEST_CASE("region bookkeeping stays consistent") {
  Region r = rasterize(disc_spec(0.2, -0.1, 0.8), 0.01);
  double sum = 0.0;
  for (std::size_t c = 0; c < r.cells.size(); ++c) {
    CHECK(r.occupied_at(r.cells[c]));
    sum += r.weights[c];
  }
  CHECK(sum == doctest::Approx(r.total_area).epsilon(1e-12));
  CHECK(std::is_sorted(r.cells.begin(), r.cells.end()));
  const int idx = r.cells[r.cells.size() / 2];
  CHECK(r.locate(r.cell_center(idx)) == idx);
  CHECK_THROWS_AS(r.locate(complexd(1.5, 0.0)), error);
  CHECK(area(blank_grid(0.01)) == 0.0);
}

TEST_CASE("isometry moves a spec without changing its area") {
  Region at_origin = rasterize(disc_spec(0.0, 0.0, 1.0), 0.008);
  Region moved = rasterize(disc_spec(std::tanh(0.5), 0.0, 1.0), 0.008);
  CHECK(area(moved) == doctest::Approx(area(at_origin)).epsilon(0.01));
}

TEST_CASE("concentric radius interpolates sinh of half radii") {
  CHECK(concentric_radius(1.3, 1.3, 0.42) == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(concentric_radius(1.0, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concentric_radius(1.0, 2.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(concentric_radius(1.0, 2.0, 0.5) == doctest::Approx(1.5396518).epsilon(1e-6));
  CHECK(std::sinh(0.5 * concentric_radius(1.0, 2.0, 0.3)) ==
        doctest::Approx(0.7 * std::sinh(0.5) + 0.3 * std::sinh(1.0)).epsilon(1e-12));
}

TEST_CASE("concentric combination hits the closed-form radius") {
  Region a = rasterize(disc_spec(0.0, 0.0, 1.0), 0.01);
  Region b = rasterize(disc_spec(0.0, 0.0, 2.0), 0.01);
  Region m = minkowski_horo(a, b, 0.5, 0.01, {4e6, 7});
  const double target = disc_area(concentric_radius(1.0, 2.0, 0.5));
  CHECK(area(m) == doctest::Approx(target).epsilon(0.02));
  CHECK(std::sqrt(area(m)) >= root_sum(area(a), area(b), 0.5) - 0.02 * std::sqrt(target));
}

TEST_CASE("singleton first argument dilates the second") {
  RegionSpec point_spec;
  point_spec.cells.emplace_back(0.1, 0.0);
  Region a = rasterize(point_spec, 0.005);
  REQUIRE(a.cells.size() == 1);
  Region b = rasterize(disc_spec(0.1, 0.0, 2.0), 0.005);
  Region m = minkowski_horo(a, b, 0.5, 0.01, {4e7, 7});
  const double target = disc_area(2.0 * std::asinh(0.5 * std::sinh(1.0)));
  CHECK(area(m) == doctest::Approx(target).epsilon(0.02));
}

TEST_CASE("combination at vanishing lambda reproduces the first region") {
  Region a = rasterize(disc_spec(-0.2, 0.1, 0.6), 0.01);
  Region b = rasterize(disc_spec(0.3, 0.0, 0.45), 0.01);
  REQUIRE(static_cast<double>(a.cells.size()) * static_cast<double>(b.cells.size()) < 4e6);
  Region m = minkowski_horo(a, b, 1e-4, 0.01, {4e6, 7});
  CHECK(area(m) == doctest::Approx(area(a)).epsilon(0.01));
}

TEST_CASE("orientation matters to the combination") {
  Region a = rasterize(disc_spec(-0.45, 0.0, 0.6), 0.01);
  Region b = rasterize(disc_spec(0.45, 0.0, 0.6), 0.01);
  Region ab = minkowski_horo(a, b, 0.5, 0.01, {4e6, 7});
  Region ba = minkowski_horo(b, a, 0.5, 0.01, {4e6, 7});
  double shared = 0.0;
  for (std::size_t c = 0; c < ab.cells.size(); ++c) {
    if (ba.occupied_at(ab.cells[c])) shared += ab.weights[c];
  }
  const double symdiff = area(ab) + area(ba) - 2.0 * shared;
  CHECK(symdiff > 0.05 * std::max(area(ab), area(ba)));
}

TEST_CASE("unoriented combination contains the oriented one") {
  Region a = rasterize(disc_spec(-0.3, 0.0, 0.6), 0.01);
  Region b = rasterize(disc_spec(0.3, 0.1, 0.5), 0.01);
  Region oriented = minkowski_horo(a, b, 0.5, 0.01, {4e6, 7});
  Region both = minkowski_horo_unoriented(a, b, 0.5, 0.01, {4e6, 7});
  CHECK(area(both) >= area(oriented) - 1e-9);
  for (int idx : oriented.cells) {
    CHECK(both.occupied_at(idx));
  }

  Region ca = rasterize(disc_spec(0.0, 0.0, 1.0), 0.01);
  Region cb = rasterize(disc_spec(0.0, 0.0, 2.0), 0.01);
  Region co = minkowski_horo(ca, cb, 0.5, 0.01, {4e6, 7});
  Region cu = minkowski_horo_unoriented(ca, cb, 0.5, 0.01, {4e6, 7});
  CHECK(area(cu) == doctest::Approx(area(co)).epsilon(0.01));
}

TEST_CASE("geodesic combination basics") {
  RegionSpec point_spec;
  point_spec.cells.emplace_back(0.2, -0.1);
  Region p = rasterize(point_spec, 0.01);
  Region m = minkowski_geodesic(p, p, 0.5, 0.01, {1e6, 7});
  CHECK(m.cells.size() == 1);
  CHECK(m.cells[0] == p.cells[0]);

  DiscPoint x(-0.4, 0.2), y(0.3, 0.3);
  CHECK(std::abs(geodesic_point(x, y, 0.0).z - x.z) < 1e-12);
  CHECK(std::abs(geodesic_point(x, y, 1.0).z - y.z) < 1e-9);
  DiscPoint mid = geodesic_point(x, y, 0.5);
  CHECK(hyp_dist(x, mid) == doctest::Approx(hyp_dist(mid, y)).epsilon(1e-9));
  CHECK(hyp_dist(x, mid) + hyp_dist(mid, y) == doctest::Approx(hyp_dist(x, y)).epsilon(1e-9));
}

TEST_CASE("dilation scales area quadratically") {
  Region b = rasterize(disc_spec(0.0, 0.0, 0.8), 0.004);
  Region same = dilate_region(DiscPoint(), b, 1.0, 0.004);
  CHECK(area(same) == doctest::Approx(area(b)).epsilon(0.01));
  Region half = dilate_region(DiscPoint(), b, 0.5, 0.004);
  CHECK(area(half) / area(b) == doctest::Approx(0.25).epsilon(0.02));
  Region twice = dilate_region(DiscPoint(), b, 2.0, 0.008);
  CHECK(area(twice) / area(b) == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("root-area inequality on random pairs") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    RegionSpec sa = random_region_spec(rng);
    RegionSpec sb = random_region_spec(rng);
    Region a = rasterize(sa, 0.02);
    Region b = rasterize(sb, 0.02);
    for (double lambda : {0.25, 0.75}) {
      Region m = minkowski_horo(a, b, lambda, 0.02, {5e5, 100u + static_cast<std::uint64_t>(trial)});
      const double lhs = std::sqrt(area(m));
      const double rhs = root_sum(area(a), area(b), lambda);
      CHECK(lhs >= rhs * (1.0 - 0.06));
    }
  }
}

TEST_CASE("retained samples nest as the fraction grows") {
  Region r = rasterize(disc_spec(0.0, 0.0, 1.0), 0.02);
  auto low = retained_samples(r, 0.3, 99);
  auto high = retained_samples(r, 0.6, 99);
  auto all = retained_samples(r, 1.0, 99);
  CHECK(low.size() < high.size());
  CHECK(all.size() == r.cells.size());
  std::set<int> high_set(high.begin(), high.end());
  for (int idx : low) CHECK(high_set.count(idx) == 1);
}

TEST_CASE("spec json round trip and documented shape") {
  RegionSpec spec = disc_spec(0.1, -0.2, 0.9, 0.02);
  spec.cells.emplace_back(0.4, 0.4);
  RegionSpec back = parse_region_spec_json(region_spec_to_json(spec));
  REQUIRE(back.discs.size() == 1);
  CHECK(back.discs[0].cx == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(back.discs[0].cy == doctest::Approx(-0.2).epsilon(1e-15));
  CHECK(back.discs[0].r == doctest::Approx(0.9).epsilon(1e-15));
  REQUIRE(back.cells.size() == 1);
  CHECK(back.grid_h == doctest::Approx(0.02).epsilon(1e-15));

  RegionSpec parsed = parse_region_spec_json(
      R"({"model":"poincare-disc","grid_h":0.01,"discs":[{"cx":0.0,"cy":0.0,"r":1.0}]})");
  CHECK(parsed.discs.size() == 1);
  CHECK_THROWS_AS(parse_region_spec_json(R"({"model":"euclidean","discs":[]})"), error);

  Region r = rasterize(disc_spec(0.0, 0.0, 0.5, 0.05), 0.05);
  const std::string mask_json = region_to_mask_json(r);
  CHECK(mask_json.find("\"rows\"") != std::string::npos);
}
