#pragma once

#include "horobm/errors.hpp"

namespace horobm {

/// Exponent of a weighted power mean, extended to [-inf, +inf].
/// Derived exponents follow the continuity conventions
/// q = p/(1+2p) (q = -inf at p = -1/2, q = 1/2 at p = +inf) and
/// ptilde = p/(p+1) (ptilde = -1 at p = -1/2, ptilde = 1 at p = +inf).
struct PMeanParam {
  double p = 1.0;

  static PMeanParam of(double p_) { return PMeanParam{p_}; }
  bool pos_inf() const;
  bool neg_inf() const;
  PMeanParam q() const;
  PMeanParam ptilde() const;
};

/// M_p(a, b; lambda) with the conventions: geometric mean at p = 0, max/min at
/// p = +/-inf, and value 0 when p < 0 and ab = 0.
double p_mean(double a, double b, double lambda, PMeanParam p);

}  // namespace horobm
