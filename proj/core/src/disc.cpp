#include "horobm/disc.hpp"

#include <cmath>
#include <numbers>

namespace horobm {

namespace {
constexpr double kBoundary = 1.0 - 1e-9;
constexpr double kBoundaryNorm = kBoundary * kBoundary;
}

DiscPoint::DiscPoint(complexd zz) : z(zz) {
  if (!(std::norm(zz) < kBoundaryNorm)) {
    throw error("DiscPoint: |z| must be < 1 - 1e-9, got |z| = " + std::to_string(std::abs(zz)));
  }
}

Mobius::Mobius(complexd a_, complexd b_) : a(a_), b(b_) {
  double det = std::norm(a_) - std::norm(b_);
  if (std::abs(det - 1.0) > 1e-9) {
    throw error("Mobius: coefficients not normalized, |a|^2-|b|^2 = " + std::to_string(det));
  }
}

Mobius Mobius::operator*(const Mobius &o) const {
  // composition as 2x2 matrix product [[a, b], [conj(b), conj(a)]]
  return Mobius(a * o.a + b * std::conj(o.b), a * o.b + b * std::conj(o.a));
}

double hyp_dist(DiscPoint p, DiscPoint q) {
  complexd num = p.z - q.z;
  complexd den = 1.0 - std::conj(p.z) * q.z;
  return 2.0 * std::atanh(std::sqrt(std::norm(num) / std::norm(den)));
}

double hyp_norm(const TangentVec &v) {
  return 2.0 * std::abs(v.dir) / (1.0 - std::norm(v.base.z));
}

double area_density(DiscPoint p) {
  double s = 1.0 - std::norm(p.z);
  return 4.0 / (s * s);
}

double disc_area(double r) {
  double s = std::sinh(r / 2.0);
  return 4.0 * std::numbers::pi * s * s;
}

Mobius mobius_from(DiscPoint p, double theta) {
  double s = 1.0 / std::sqrt(1.0 - std::norm(p.z));
  complexd half = std::polar(1.0, theta / 2.0);
  return Mobius(half * s, p.z * std::conj(half) * s);
}

DiscPoint mobius_apply(const Mobius &T, DiscPoint p) {
  return DiscPoint((T.a * p.z + T.b) / (std::conj(T.b) * p.z + std::conj(T.a)));
}

complexd mobius_deriv(const Mobius &T, complexd z) {
  complexd den = std::conj(T.b) * z + std::conj(T.a);
  return 1.0 / (den * den);
}

TangentVec mobius_push(const Mobius &T, const TangentVec &v) {
  return TangentVec{mobius_apply(T, v.base), mobius_deriv(T, v.base.z) * v.dir};
}

}  // namespace horobm
