#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "horobm/horocycle.hpp"
#include "horobm/region.hpp"
#include "support/oracles.hpp"

using namespace horobm;
using namespace horobm::testutil;

namespace {

Horocycle random_horocycle(std::mt19937_64& rng) {
  return Horocycle(0.2 + 1.5 * u01(rng), 2.0 * (u01(rng) - 0.5),
                   std::polar(1.0, 2.0 * M_PI * u01(rng)));
}

// Geodesic curvature of a conformal-metric curve from central differences:
// kappa = e^phi |z'' + 2 phi_z (z')^2| for unit-speed curves,
// phi_z = conj(z)/(1-|z|^2) in this model.
double curvature_fd(const Horocycle& h, double t, double step) {
  const complexd zm = horo_eval(h, t - step).z;
  const complexd z0 = horo_eval(h, t).z;
  const complexd zp = horo_eval(h, t + step).z;
  const complexd d1 = (zp - zm) / (2.0 * step);
  const complexd d2 = (zp - 2.0 * z0 + zm) / (step * step);
  const double s = 1.0 - std::norm(z0);
  return (2.0 / s) * std::abs(d2 + 2.0 * std::conj(z0) * d1 * d1 / s);
}

}  // namespace

TEST_CASE("evaluation hits the origin and runs at unit speed") {
  Horocycle h(1.0, 0.0, complexd(1.0, 0.0));
  CHECK(std::abs(horo_eval(h, 0.0).z) < 1e-15);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    Horocycle g = random_horocycle(rng);
    const double t = 3.0 * (u01(rng) - 0.5);
    const double step = 1e-4;
    const complexd fd = (horo_eval(g, t + step).z - horo_eval(g, t - step).z) / (2.0 * step);
    CHECK(hyp_norm({horo_eval(g, t), fd}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(hyp_norm({horo_eval(g, t), horo_velocity(g, t)}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(fd - horo_velocity(g, t)) < 1e-6);
  }
}

TEST_CASE("evaluation converges to the tangency point at large parameter") {
  Horocycle h(0.8, 0.3, std::polar(1.0, 1.2));
  CHECK(std::abs(horo_eval(h, 1e4).z - h.omega) < 1e-3);
  CHECK(std::abs(horo_eval(h, -1e4).z - h.omega) < 1e-3);
}

TEST_CASE("trace satisfies the tangency level equation") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    Horocycle h = random_horocycle(rng);
    const double t = 4.0 * (u01(rng) - 0.5);
    CHECK(horo_level(h.omega, horo_eval(h, t)) == doctest::Approx(h.lambda).epsilon(1e-10));
  }
}

TEST_CASE("tangent data round trips") {
  TangentVec v{DiscPoint(), complexd(0.5, 0.0)};
  Horocycle h = horo_from_tangent(v, 0.0);
  CHECK(h.lambda == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.t0 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(h.omega - complexd(0.0, 1.0)) < 1e-12);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    Horocycle g = random_horocycle(rng);
    const double t = 2.0 * (u01(rng) - 0.5);
    Horocycle back = horo_from_tangent({horo_eval(g, t), horo_velocity(g, t)}, t);
    CHECK(back.lambda == doctest::Approx(g.lambda).epsilon(1e-8));
    CHECK(back.t0 == doctest::Approx(g.t0).epsilon(1e-8));
    CHECK(std::abs(back.omega - g.omega) < 1e-8);

    Horocycle shifted = horo_from_tangent({horo_eval(g, t), horo_velocity(g, t)}, t + 0.7);
    CHECK(shifted.t0 == doctest::Approx(g.t0 + 0.7).epsilon(1e-8));
    CHECK(std::abs(shifted.omega - g.omega) < 1e-8);
  }
  CHECK_THROWS_AS(horo_from_tangent({DiscPoint(), complexd(0.9, 0.0)}, 0.0), error);
}

TEST_CASE("curve through two points with known trace") {
  HoroSegment seg = horo_between(DiscPoint(0.0, 0.0), DiscPoint(0.5, -0.5));
  EuclidCircle c = euclid_center(seg.h);
  CHECK(std::abs(c.center - complexd(0.5, 0.0)) < 1e-9);
  CHECK(c.radius == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(seg.tx < seg.ty);
}

TEST_CASE("two-point solve matches the tangency-angle scan") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    DiscPoint x = random_disc_point(rng, 0.7), y = random_disc_point(rng, 0.7);
    if (std::abs(x.z - y.z) < 1e-3) continue;
    auto roots = tangency_roots(x, y);
    REQUIRE(!roots.empty());
    HoroSegment fwd = horo_between(x, y);
    HoroSegment rev = horo_between(y, x);
    auto matches = [&](const Horocycle& h) {
      for (const auto& [psi, level] : roots) {
        if (wrap_gap(psi, std::arg(h.omega)) < 1e-6 && std::abs(level - h.lambda) < 1e-6) {
          return true;
        }
      }
      return false;
    };
    CHECK(matches(fwd.h));
    CHECK(matches(rev.h));
    CHECK(std::abs(fwd.h.omega - rev.h.omega) > 1e-6);
  }
}

TEST_CASE("segment endpoints and the chord identity") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    DiscPoint x = random_disc_point(rng, 0.75), y = random_disc_point(rng, 0.75);
    if (std::abs(x.z - y.z) < 1e-6) continue;
    HoroSegment seg = horo_between(x, y);
    CHECK(std::abs(horo_eval(seg.h, seg.tx).z - x.z) < 1e-9);
    CHECK(std::abs(horo_eval(seg.h, seg.ty).z - y.z) < 1e-9);
    CHECK(seg.ty - seg.tx ==
          doctest::Approx(2.0 * std::sinh(0.5 * hyp_dist(x, y))).epsilon(1e-9));
  }
  CHECK_THROWS_AS(horo_between(DiscPoint(0.1, 0.2), DiscPoint(0.1, 0.2)), error);
}

TEST_CASE("chord identity along a fixed curve") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    Horocycle h = random_horocycle(rng);
    const double s = 3.0 * (u01(rng) - 0.5);
    const double t = s + 0.01 + 2.0 * u01(rng);
    CHECK(2.0 * std::sinh(0.5 * hyp_dist(horo_eval(h, s), horo_eval(h, t))) ==
          doctest::Approx(t - s).epsilon(1e-8));
    CHECK(chord_length(horo_eval(h, s), horo_eval(h, t)) ==
          doctest::Approx(t - s).epsilon(1e-8));
  }
}

TEST_CASE("interpolation point values") {
  DiscPoint x(0.3, -0.2);
  CHECK(std::abs(horo_point(x, x, 0.37).z - x.z) < 1e-15);

  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    Horocycle h = random_horocycle(rng);
    DiscPoint a = horo_eval(h, -0.8), b = horo_eval(h, 0.9);
    const double lam = u01(rng);
    DiscPoint mid = horo_point(a, b, lam);
    CHECK(horo_level(h.omega, mid) == doctest::Approx(h.lambda).epsilon(1e-9));
    CHECK(chord_length(a, mid) == doctest::Approx(lam * chord_length(a, b)).epsilon(1e-8));
    CHECK(chord_length(mid, b) ==
          doctest::Approx((1.0 - lam) * chord_length(a, b)).epsilon(1e-8));
  }
}

TEST_CASE("interpolation is mobius equivariant") {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 300; ++trial) {
    Mobius t = mobius_from(random_disc_point(rng, 0.5), 2.0 * M_PI * u01(rng));
    DiscPoint x = random_disc_point(rng, 0.7), y = random_disc_point(rng, 0.7);
    if (std::abs(x.z - y.z) < 1e-6) continue;
    const double lam = u01(rng);
    DiscPoint direct = horo_point(mobius_apply(t, x), mobius_apply(t, y), lam);
    DiscPoint mapped = mobius_apply(t, horo_point(x, y, lam));
    CHECK(std::abs(direct.z - mapped.z) < 1e-9);
  }
}

TEST_CASE("chord length values") {
  CHECK(chord_length(DiscPoint(0.2, 0.1), DiscPoint(0.2, 0.1)) == 0.0);
  CHECK(chord_length(DiscPoint(), DiscPoint(std::tanh(1.0), 0.0)) ==
        doctest::Approx(2.0 * std::sinh(1.0)).epsilon(1e-12));
  double prev = 0.0;
  for (double d = 0.25; d <= 2.5; d += 0.25) {
    const double c = chord_length(DiscPoint(), DiscPoint(std::tanh(0.5 * d), 0.0));
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("dilation fixes t=1 and matches the asinh closed form") {
  DiscPoint O(0.0, 0.0);
  DiscPoint p(std::tanh(1.0), 0.0);
  CHECK(std::abs(horo_dilate(O, p, 1.0).z - p.z) < 1e-12);
  DiscPoint half = horo_dilate(O, p, 0.5);
  CHECK(hyp_dist(O, half) ==
        doctest::Approx(2.0 * std::asinh(0.5 * std::sinh(1.0))).epsilon(1e-10));
  CHECK(hyp_dist(O, half) == doctest::Approx(1.1163269190).epsilon(1e-6));

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    DiscPoint o = random_disc_point(rng, 0.4), q = random_disc_point(rng, 0.6);
    if (std::abs(o.z - q.z) < 1e-6) continue;
    DiscPoint once = horo_dilate(o, horo_dilate(o, q, 0.6), 0.5);
    DiscPoint both = horo_dilate(o, q, 0.3);
    CHECK(std::abs(once.z - both.z) < 1e-9);
    CHECK(chord_length(o, horo_dilate(o, q, 0.6)) ==
          doctest::Approx(0.6 * chord_length(o, q)).epsilon(1e-9));
  }
}

TEST_CASE("euclidean circle data") {
  EuclidCircle c = euclid_center(Horocycle(1.0, 0.0, complexd(1.0, 0.0)));
  CHECK(std::abs(c.center - complexd(0.5, 0.0)) < 1e-15);
  CHECK(c.radius == doctest::Approx(0.5).epsilon(1e-15));

  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    Horocycle h = random_horocycle(rng);
    EuclidCircle ec = euclid_center(h);
    CHECK(ec.radius < 1.0);
    CHECK(std::abs(ec.center) + ec.radius == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<complexd> samples;
    for (int k = 0; k < 64; ++k) samples.push_back(horo_eval(h, -3.0 + 6.0 * k / 63.0).z);
    CircleFit fit = fit_circle(samples);
    CHECK(std::abs(fit.center - ec.center) < 1e-8);
    CHECK(fit.radius == doctest::Approx(ec.radius).epsilon(1e-8));
    CHECK(fit.rms < 1e-9);
  }
}

TEST_CASE("constant geodesic curvature one") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    Horocycle h = random_horocycle(rng);
    const double t = 3.0 * (u01(rng) - 0.5);
    CHECK(curvature_fd(h, t, 1e-3) == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("closed curve bounds a convex set") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    Horocycle h = random_horocycle(rng);
    DiscPoint a = horo_eval(h, 2.5 * (u01(rng) - 0.5));
    DiscPoint b = horo_eval(h, 2.5 * (u01(rng) - 0.5));
    DiscPoint mid = geodesic_point(a, b, u01(rng));
    CHECK(horo_level(h.omega, mid) <= h.lambda + 1e-9);
  }
}
