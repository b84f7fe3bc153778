#pragma once

#include <functional>
#include <vector>

#include "horobm/horocycle.hpp"

namespace horobm {

/// Result of checking that t -> det dF(y0, t) is affine for the family
/// F(y, t) = point at parameter t of the curve (lambda(y), t0(y), e^{i phi(y)}),
/// with det taken against the hyperbolic area form.
struct AffineFitReport {
  double y0 = 0.0;
  std::vector<double> t;
  std::vector<double> det;
  double slope = 0.0;
  double intercept = 0.0;
  double fit_residual_rel = 0.0;
  double pred_slope = 0.0;      // phi'/lambda at y0
  double pred_intercept = 0.0;  // -(t0 phi' + lambda')/lambda at y0
  double slope_err = 0.0;
  double intercept_err = 0.0;
  bool ok = false;
};

/// Central-difference Jacobian of the family against the area form on t_grid,
/// least-squares affine fit, and comparison with the closed-form coefficients
/// (families' derivatives also taken by central differences at y0).
AffineFitReport jacobian_affine_check(const std::function<double(double)>& lambda_fn,
                                      const std::function<double(double)>& t0_fn,
                                      const std::function<double(double)>& phi_fn, double y0,
                                      const std::vector<double>& t_grid, double fd_h = 1e-5,
                                      double tol = 1e-3);

struct SignReport {
  bool constant_sign = true;
  bool has_root = false;
  double root = 0.0;  // interior root of the fitted affine function, when present
};

/// Whether the fitted affine Jacobian keeps one sign on the interior of the
/// fitted t-range.
SignReport sign_constancy_check(const AffineFitReport& rep);

}  // namespace horobm
