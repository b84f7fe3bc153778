#include "horobm/finsler.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace horobm {

double phi(DiscPoint p, complexd w) {
  double s = 1.0 - std::norm(p.z);
  return 2.0 * (std::abs(w) + (p.z * std::conj(w)).imag()) / s;
}

double eta(DiscPoint p, complexd w) {
  double s = 1.0 - std::norm(p.z);
  return 2.0 * (std::conj(p.z) * w).imag() / s;
}

double curve_length_phi(const std::vector<DiscPoint> &polyline) {
  if (polyline.size() < 2) {
    throw error("curve_length_phi: need at least 2 points");
  }
  double len = 0.0;
  for (std::size_t k = 0; k + 1 < polyline.size(); ++k) {
    const complexd a = polyline[k].z;
    const complexd b = polyline[k + 1].z;
    len += phi(DiscPoint(0.5 * (a + b)), b - a);
  }
  return len;
}

double dist_phi(DiscPoint x, DiscPoint y) {
  if (x.z == y.z) return 0.0;
  HoroSegment seg = horo_between(x, y);
  EuclidCircle c = euclid_center(seg.h);
  double a = std::arg((y.z - c.center) / (x.z - c.center));
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

namespace {

std::vector<DiscPoint> arc_points(const HoroSegment &seg, int segments) {
  std::vector<DiscPoint> pts;
  pts.reserve(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    double t = seg.tx + (seg.ty - seg.tx) * k / segments;
    pts.push_back(horo_eval(seg.h, t));
  }
  return pts;
}

double u01(std::mt19937_64 &rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

MinimalityReport check_minimality(DiscPoint x, DiscPoint y, int trials, std::uint64_t seed,
                                  double amplitude, int segments, double tolerance) {
  if (x.z == y.z) {
    throw error("check_minimality: x and y must differ");
  }
  MinimalityReport rep;
  rep.tolerance = tolerance;
  rep.dist = dist_phi(x, y);
  HoroSegment seg = horo_between(x, y);
  std::vector<DiscPoint> base = arc_points(seg, segments);

  auto consider = [&](const std::vector<DiscPoint> &poly) {
    double len = curve_length_phi(poly);
    if (rep.min_competitor == 0.0 || len < rep.min_competitor) rep.min_competitor = len;
    if (len < rep.dist - tolerance) ++rep.violations;
  };

  // straight Euclidean chord
  {
    std::vector<DiscPoint> chord;
    chord.reserve(segments + 1);
    for (int k = 0; k <= segments; ++k) {
      double s = static_cast<double>(k) / segments;
      chord.push_back(DiscPoint(x.z + s * (y.z - x.z)));
    }
    consider(chord);
  }

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    int harmonics = 1 + static_cast<int>(rng() % 3);
    std::vector<complexd> coef(harmonics);
    double total = 0.0;
    for (auto &c : coef) {
      c = complexd(2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0);
      total += std::abs(c);
    }
    double amp = amplitude * u01(rng);
    for (auto &c : coef) c *= amp / (total > 0.0 ? total : 1.0);

    std::vector<DiscPoint> pert;
    pert.reserve(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      double s = static_cast<double>(k) / segments;
      complexd delta(0.0, 0.0);
      for (int j = 0; j < harmonics; ++j) {
        delta += coef[j] * std::sin((j + 1) * std::numbers::pi * s);
      }
      complexd z = base[k].z + delta;
      double r = std::abs(z);
      if (r > 0.995) z *= 0.995 / r;
      pert.push_back(DiscPoint(z));
    }
    pert.front() = x;
    pert.back() = y;
    consider(pert);
  }
  rep.margin = rep.min_competitor - rep.dist;
  return rep;
}

double check_deta(DiscPoint p, double h) {
  if (!(h > 0.0) || std::abs(p.z) + 2.0 * h >= 1.0 - 1e-9) {
    throw error("check_deta: point too close to the boundary for step h");
  }
  double X = p.x(), Y = p.y();
  auto P = [](double x, double y) { return -2.0 * y / (1.0 - x * x - y * y); };
  auto Q = [](double x, double y) { return 2.0 * x / (1.0 - x * x - y * y); };
  double curl = (Q(X + h, Y) - Q(X - h, Y)) / (2.0 * h) - (P(X, Y + h) - P(X, Y - h)) / (2.0 * h);
  return std::abs(curl - area_density(p));
}

}  // namespace horobm
