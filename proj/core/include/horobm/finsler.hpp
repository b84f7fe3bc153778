#pragma once

#include <cstdint>
#include <vector>

#include "horobm/horocycle.hpp"

namespace horobm {

/// Randers metric Phi(z, w) = 2(|w| + Im(z conj(w)))/(1 - |z|^2) = sqrt(g) - eta.
/// Nonnegative, vanishes only at w = 0, asymmetric in w.
double phi(DiscPoint p, complexd w);

/// The 1-form eta = 2(x dy - y dx)/(1 - x^2 - y^2) evaluated on w at p.
double eta(DiscPoint p, complexd w);

/// Composite midpoint quadrature of Phi along the polyline.
double curve_length_phi(const std::vector<DiscPoint> &polyline);

/// Distance induced by Phi: the counterclockwise Euclidean angle swept from x to y
/// around the Euclidean center of the oriented horocycle joining them. In [0, 2pi).
double dist_phi(DiscPoint x, DiscPoint y);

struct MinimalityReport {
  double dist = 0.0;            // dist_phi(x, y)
  double min_competitor = 0.0;  // smallest competitor Phi-length observed
  double margin = 0.0;          // min_competitor - dist
  int violations = 0;           // competitors shorter than dist - tolerance
  double tolerance = 1e-4;
};

/// Compares dist_phi(x,y) against `trials` random bump perturbations of the
/// joining horocycle arc (plus the straight chord). Bump amplitude <= `amplitude`
/// in model coordinates, endpoints fixed.
MinimalityReport check_minimality(DiscPoint x, DiscPoint y, int trials, std::uint64_t seed,
                                  double amplitude = 0.1, int segments = 4096,
                                  double tolerance = 1e-4);

/// |central-difference exterior derivative of eta at p minus area_density(p)|.
double check_deta(DiscPoint p, double h);

}  // namespace horobm
