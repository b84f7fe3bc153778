#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "horobm/transport.hpp"
#include "support/oracles.hpp"

using namespace horobm;
using namespace horobm::testutil;

namespace {

MassInstance random_instance(std::mt19937_64& rng, std::size_t n) {
  std::vector<DiscPoint> pts;
  std::vector<double> r1(n, 0.0), r2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(random_disc_point(rng, 0.75));
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r1[i] = u01(rng);
    r2[i] = u01(rng);
    s1 += r1[i];
    s2 += r2[i];
  }
  for (std::size_t i = 0; i < n; ++i) r2[i] *= s1 / s2;
  return MassInstance(std::move(pts), std::move(r1), std::move(r2));
}

double feasibility_residual(const MassInstance& inst, const KantorovichResult& res) {
  double worst = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    for (std::size_t j = 0; j < inst.size(); ++j) {
      if (i == j) continue;
      worst = std::max(worst, res.u[j] - res.u[i] - res.d(i, j));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("instance validation") {
  std::vector<DiscPoint> pts{DiscPoint(0.0, 0.0), DiscPoint(0.3, 0.0)};
  CHECK_THROWS_AS(MassInstance(pts, {1.0, 0.0}, {0.0, 0.5}), error);
  CHECK_THROWS_AS(MassInstance(pts, {1.0, -1.0}, {0.0, 0.0}), error);
  CHECK_NOTHROW(MassInstance(pts, {1.0, 0.0}, {0.0, 1.0}));
}

TEST_CASE("instance json round trip") {
  std::vector<DiscPoint> pts{DiscPoint(0.1, -0.2), DiscPoint(0.3, 0.4)};
  MassInstance inst(pts, {0.7, 0.0}, {0.0, 0.7});
  MassInstance back = parse_mass_instance_json(mass_instance_to_json(inst));
  REQUIRE(back.size() == 2);
  CHECK(back.points[0].x() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(back.points[1].y() == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(back.rho1[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(back.rho2[1] == doctest::Approx(0.7).epsilon(1e-15));
}

TEST_CASE("balanced identical masses transport for free") {
  std::mt19937_64 rng(81);
  std::vector<DiscPoint> pts;
  std::vector<double> rho;
  for (int i = 0; i < 12; ++i) {
    pts.push_back(random_disc_point(rng, 0.6));
    rho.push_back(0.2 + u01(rng));
  }
  MassInstance inst(pts, rho, rho);
  KantorovichResult res = solve_kantorovich(inst);
  CHECK(res.w1 == doctest::Approx(0.0).epsilon(1e-10));
  const auto [lo, hi] = std::minmax_element(res.u.begin(), res.u.end());
  CHECK(*hi - *lo <= 1e-9);

  StrainSet strain = strain_pairs(inst, res, 1e-9);
  auto rays = extract_rays(inst, res, strain);
  CHECK(rays.empty());
  MassBalanceReport mb = mass_balance(inst, rays, strain);
  CHECK(mb.ok);
}

TEST_CASE("two point instance is a single tight constraint") {
  DiscPoint x1(-0.2, 0.1), x2(0.3, 0.25);
  MassInstance inst({x1, x2}, {1.0, 0.0}, {0.0, 1.0});
  KantorovichResult res = solve_kantorovich(inst);
  const double d = dist_phi(x1, x2);
  CHECK(res.w1 == doctest::Approx(d).epsilon(1e-9));
  CHECK(res.u[1] - res.u[0] == doctest::Approx(d).epsilon(1e-9));

  StrainSet strain = strain_pairs(inst, res, 1e-6);
  REQUIRE(strain.pairs.size() == 1);
  CHECK(strain.pairs[0] == std::pair<int, int>(0, 1));
  CHECK(strain.loose_points.empty());
}

TEST_CASE("dual optimum matches an independent primal solver") {
  std::mt19937_64 rng(82);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 8 + rng() % 57;
    MassInstance inst = random_instance(rng, n);
    KantorovichResult res = solve_kantorovich(inst);
    const double primal = transport_cost_bellman(inst);
    CHECK(res.w1 == doctest::Approx(primal).epsilon(1e-6));
    CHECK(feasibility_residual(inst, res) <= 1e-9);
  }
  MassInstance sixteen = random_instance(rng, 16);
  CHECK(solve_kantorovich(sixteen).w1 ==
        doctest::Approx(transport_cost_bellman(sixteen)).epsilon(1e-6));
}

TEST_CASE("solver enforces balance and the size cap") {
  std::vector<DiscPoint> pts{DiscPoint(0.0, 0.0), DiscPoint(0.2, 0.0)};
  CHECK_THROWS_AS(solve_kantorovich(MassInstance(pts, {1.0, 0.0}, {0.0, 1.0}), SolveOpts{1}),
                  error);
}

TEST_CASE("tight chains concatenate within three epsilons") {
  Horocycle h(0.8, 0.0, complexd(1.0, 0.0));
  std::vector<DiscPoint> pts{horo_eval(h, -0.9), horo_eval(h, 0.1), horo_eval(h, 0.8)};
  MassInstance inst(pts, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0});
  KantorovichResult res = solve_kantorovich(inst);
  const double eps = 1e-6;
  StrainSet fine = strain_pairs(inst, res, eps);
  auto has = [](const StrainSet& s, int i, int j) {
    return std::find(s.pairs.begin(), s.pairs.end(), std::pair<int, int>(i, j)) != s.pairs.end();
  };
  if (has(fine, 0, 1) && has(fine, 1, 2)) {
    CHECK(has(strain_pairs(inst, res, 3.0 * eps), 0, 2));
  }
  CHECK(has(fine, 0, 2));
}

TEST_CASE("strain classification separates strained and loose points") {
  Horocycle h(0.9, 0.0, complexd(0.0, 1.0));
  std::vector<DiscPoint> pts{horo_eval(h, -0.15), horo_eval(h, 0.15), DiscPoint(-0.5, -0.5)};
  MassInstance inst(pts, {1.0, 0.0, 0.4}, {0.0, 1.0, 0.4});
  KantorovichResult res = solve_kantorovich(inst);
  StrainSet strain = strain_pairs(inst, res, 1e-6);
  REQUIRE(!strain.pairs.empty());
  std::set<int> in_pairs;
  for (auto& [i, j] : strain.pairs) {
    in_pairs.insert(i);
    in_pairs.insert(j);
  }
  CHECK(in_pairs.count(0) == 1);
  CHECK(in_pairs.count(1) == 1);
  CHECK(std::find(strain.loose_points.begin(), strain.loose_points.end(), 2) !=
        strain.loose_points.end());
}

TEST_CASE("known arcs are recovered with their parameters") {
  for (int K : {1, 2, 3}) {
    ArcsInstance truth = synth_arcs(K, 6, 900 + K);
    KantorovichResult res = solve_kantorovich(truth.inst);
    CHECK(feasibility_residual(truth.inst, res) <= 1e-9);
    StrainSet strain = strain_pairs(truth.inst, res, 1e-6);
    auto rays = extract_rays(truth.inst, res, strain, 1e-3);
    REQUIRE(static_cast<int>(rays.size()) == K);

    std::vector<bool> used(static_cast<std::size_t>(K), false);
    for (const auto& ray : rays) {
      double best = 1e9;
      int best_k = -1;
      for (int k = 0; k < K; ++k) {
        if (used[static_cast<std::size_t>(k)]) continue;
        const double gap = wrap_gap(std::arg(ray.h.omega), truth.angle[static_cast<std::size_t>(k)]) +
                           std::abs(ray.h.lambda - truth.lambda[static_cast<std::size_t>(k)]);
        if (gap < best) {
          best = gap;
          best_k = k;
        }
      }
      REQUIRE(best_k >= 0);
      used[static_cast<std::size_t>(best_k)] = true;
      CHECK(best <= 1e-3);
      for (std::size_t q = 0; q < ray.idx.size(); ++q) {
        CHECK(hyp_dist(horo_eval(ray.h, ray.t[q]),
                       truth.inst.points[static_cast<std::size_t>(ray.idx[q])]) <= 1e-3);
      }
    }

    std::set<int> seen;
    for (const auto& ray : rays) {
      for (int idx : ray.idx) {
        CHECK(seen.count(idx) == 0);
        seen.insert(idx);
      }
    }

    MassBalanceReport mb = mass_balance(truth.inst, rays, strain, 0.02);
    CHECK(mb.all_balanced);
    CHECK(mb.all_suffix_ok);
    CHECK(mb.coverage >= 0.95);
    for (const auto& rb : mb.per_ray) {
      CHECK(rb.residual_rel <= 0.02);
      CHECK(rb.worst_suffix <= 1e-9);
    }
  }
}

TEST_CASE("chain order is monotone, feasible, and tight on transported links") {
  ArcsInstance truth = synth_arcs(1, 8, 1234);
  KantorovichResult res = solve_kantorovich(truth.inst);
  StrainSet strain = strain_pairs(truth.inst, res, 1e-6);
  auto rays = extract_rays(truth.inst, res, strain, 1e-3);
  REQUIRE(rays.size() == 1);
  const DiscreteRay& ray = rays[0];
  REQUIRE(ray.idx.size() >= 2);
  std::set<std::pair<int, int>> tight(strain.pairs.begin(), strain.pairs.end());
  int tight_links = 0;
  for (std::size_t q = 0; q + 1 < ray.idx.size(); ++q) {
    CHECK(ray.t[q] < ray.t[q + 1]);
    const int i = ray.idx[q];
    const int j = ray.idx[q + 1];
    const double du =
        res.u[static_cast<std::size_t>(j)] - res.u[static_cast<std::size_t>(i)];
    const double dphi = dist_phi(truth.inst.points[static_cast<std::size_t>(i)],
                                 truth.inst.points[static_cast<std::size_t>(j)]);
    CHECK(du <= dphi + 1e-6);
    if (tight.count({i, j})) {
      ++tight_links;
      CHECK(du == doctest::Approx(dphi).epsilon(1e-5));
    }
  }
  CHECK(tight_links == 8);
}
