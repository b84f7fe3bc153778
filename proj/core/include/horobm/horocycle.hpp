#pragma once

#include "horobm/disc.hpp"

namespace horobm {

/// Oriented unit-speed horocycle alpha(t) = omega*(t-t0+(1-lambda)i)/(t-t0+(1+lambda)i).
/// Trace: Euclidean circle of center omega/(1+lambda), radius lambda/(1+lambda),
/// internally tangent to the unit circle at omega, traversed counterclockwise.
struct Horocycle {
  double lambda;
  double t0;
  complexd omega;

  Horocycle(double lambda_, double t0_, complexd omega_);
};

struct HoroSegment {
  Horocycle h;
  double tx, ty;
};

struct EuclidCircle {
  complexd center;
  double radius;
};

DiscPoint horo_eval(const Horocycle &h, double t);
complexd horo_velocity(const Horocycle &h, double t);

/// Horocycle through v.base with velocity v.dir at time t. v must be unit (1e-9).
Horocycle horo_from_tangent(const TangentVec &v, double t);

/// The unique oriented horocycle from x to y; tx < ty, ty - tx = 2 sinh(d(x,y)/2).
/// Errors on x = y.
HoroSegment horo_between(DiscPoint x, DiscPoint y);

/// Point at parameter fraction lambda along the oriented horocycle arc from x to y.
/// horo_point(x, x, lambda) = x.
DiscPoint horo_point(DiscPoint x, DiscPoint y, double lambda);

/// 2 sinh(hyp_dist(x,y)/2): arclength of the horocycle arc between x and y.
double chord_length(DiscPoint x, DiscPoint y);

/// Scale the chord from O to p by factor t along the oriented horocycle through both.
DiscPoint horo_dilate(DiscPoint O, DiscPoint p, double t);

EuclidCircle euclid_center(const Horocycle &h);

}  // namespace horobm
