#include "horobm/horocycle.hpp"

#include <cmath>
#include <numbers>

namespace horobm {

Horocycle::Horocycle(double lambda_, double t0_, complexd omega_)
    : lambda(lambda_), t0(t0_), omega(omega_) {
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw error("Horocycle: lambda must be positive and finite");
  }
  if (std::abs(std::abs(omega_) - 1.0) >= 1e-12) {
    throw error("Horocycle: omega must be unit modulus");
  }
  if (!std::isfinite(t0_)) {
    throw error("Horocycle: t0 must be finite");
  }
}

DiscPoint horo_eval(const Horocycle &h, double t) {
  double tau = t - h.t0;
  complexd num(tau, 1.0 - h.lambda);
  complexd den(tau, 1.0 + h.lambda);
  return DiscPoint(h.omega * num / den);
}

complexd horo_velocity(const Horocycle &h, double t) {
  double tau = t - h.t0;
  complexd den(tau, 1.0 + h.lambda);
  return h.omega * complexd(0.0, 2.0 * h.lambda) / (den * den);
}

Horocycle horo_from_tangent(const TangentVec &v, double t) {
  if (std::abs(hyp_norm(v) - 1.0) > 1e-9) {
    throw error("horo_from_tangent: tangent must have unit hyperbolic norm");
  }
  const complexd z = v.base.z;
  const complexd vh = 2.0 * v.dir / (1.0 - std::norm(z));
  const complexd i(0.0, 1.0);
  const double den = std::norm(vh - i * z);
  double lambda = (1.0 - std::norm(z)) / den;
  double t0 = t - 2.0 * (vh * std::conj(z)).real() / den;
  complexd omega = (z + i * vh) / (1.0 + i * std::conj(z) * vh);
  omega /= std::abs(omega);
  return Horocycle(lambda, t0, omega);
}

HoroSegment horo_between(DiscPoint x, DiscPoint y) {
  if (x.z == y.z) {
    throw error("horo_between: degenerate pair x = y");
  }
  // Normalize x to 0. Horocycles through 0 have lambda = 1 and Euclidean center
  // e^{i phi}/2; the circle passes through y' iff cos(phi - psi) = rho, and the
  // counterclockwise branch is the root in [psi, psi + pi].
  const Mobius T = mobius_from(x, 0.0);
  const complexd yp = mobius_apply(T.inverse(), y).z;
  const double rho = std::abs(yp);
  const double psi = std::arg(yp);
  double lo = 0.0, hi = std::numbers::pi;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (std::cos(mid) - rho > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double phi = psi + 0.5 * (lo + hi);
  const complexd om0 = std::polar(1.0, phi);
  // alpha(t) = om0 * t/(t+2i) has velocity -i*om0/2 at t = 0.
  const complexd v0 = complexd(0.0, -0.5) * om0;
  const TangentVec v = mobius_push(T, TangentVec{DiscPoint(), v0});
  Horocycle h = horo_from_tangent(v, 0.0);
  const double ty = 2.0 * rho / std::sqrt((1.0 - rho) * (1.0 + rho));
  return HoroSegment{h, 0.0, ty};
}

DiscPoint horo_point(DiscPoint x, DiscPoint y, double lambda) {
  if (x.z == y.z) return x;
  // Closed form of the same construction as horo_between: normalize x to 0,
  // tangency direction e^{i phi} = (w/rho)(rho + i sqrt(1-rho^2)), evaluate the
  // normalized curve at s = lambda * 2 rho / sqrt(1-rho^2), pull back.
  const complexd w = (y.z - x.z) / (1.0 - std::conj(x.z) * y.z);
  const double rho = std::sqrt(std::norm(w));
  if (rho == 0.0) return x;
  const double root = std::sqrt((1.0 - rho) * (1.0 + rho));
  const complexd eiphi = (w / rho) * complexd(rho, root);
  const double s = lambda * 2.0 * rho / root;
  const complexd zp = eiphi * s / complexd(s, 2.0);
  return DiscPoint((zp + x.z) / (1.0 + std::conj(x.z) * zp));
}

double chord_length(DiscPoint x, DiscPoint y) {
  return 2.0 * std::sinh(hyp_dist(x, y) / 2.0);
}

DiscPoint horo_dilate(DiscPoint O, DiscPoint p, double t) {
  if (!(t > 0.0)) {
    throw error("horo_dilate: t must be positive");
  }
  if (O.z == p.z) return O;
  HoroSegment seg = horo_between(O, p);
  return horo_eval(seg.h, seg.tx + t * (seg.ty - seg.tx));
}

EuclidCircle euclid_center(const Horocycle &h) {
  return EuclidCircle{h.omega / (1.0 + h.lambda), h.lambda / (1.0 + h.lambda)};
}

}  // namespace horobm
