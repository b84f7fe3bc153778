#pragma once

#include <complex>

#include "horobm/errors.hpp"

namespace horobm {

using complexd = std::complex<double>;

/// Point of the hyperbolic plane in the Poincare disc model.
/// Construction rejects |z| >= 1 - 1e-9 so the area density stays bounded.
struct DiscPoint {
  complexd z;

  DiscPoint() : z(0.0, 0.0) {}
  explicit DiscPoint(complexd zz);
  DiscPoint(double x, double y) : DiscPoint(complexd(x, y)) {}

  double x() const { return z.real(); }
  double y() const { return z.imag(); }
};

inline bool operator==(const DiscPoint &p, const DiscPoint &q) { return p.z == q.z; }

/// Tangent vector in model-coordinate components; hyperbolic norm 2|dir|/(1-|z|^2).
struct TangentVec {
  DiscPoint base;
  complexd dir;
};

/// Orientation-preserving isometry z -> (az+b)/(conj(b)z+conj(a)), |a|^2-|b|^2 = 1.
struct Mobius {
  complexd a, b;

  Mobius(complexd a_, complexd b_);
  static Mobius identity() { return Mobius(complexd(1.0, 0.0), complexd(0.0, 0.0)); }
  Mobius inverse() const { return Mobius(std::conj(a), -b); }
  Mobius operator*(const Mobius &other) const;
};

double hyp_dist(DiscPoint p, DiscPoint q);
double hyp_norm(const TangentVec &v);
double area_density(DiscPoint p);
double disc_area(double r);

/// Isometry mapping 0 to p with derivative rotation theta at 0.
Mobius mobius_from(DiscPoint p, double theta);
DiscPoint mobius_apply(const Mobius &T, DiscPoint p);
TangentVec mobius_push(const Mobius &T, const TangentVec &v);
complexd mobius_deriv(const Mobius &T, complexd z);

}  // namespace horobm
