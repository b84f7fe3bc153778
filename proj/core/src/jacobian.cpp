#include "horobm/jacobian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace horobm {

namespace {

complexd family_point(const std::function<double(double)>& lambda_fn,
                      const std::function<double(double)>& t0_fn,
                      const std::function<double(double)>& phi_fn, double y, double t) {
  Horocycle h(lambda_fn(y), t0_fn(y), std::polar(1.0, phi_fn(y)));
  return horo_eval(h, t).z;
}

}  // namespace

AffineFitReport jacobian_affine_check(const std::function<double(double)>& lambda_fn,
                                      const std::function<double(double)>& t0_fn,
                                      const std::function<double(double)>& phi_fn, double y0,
                                      const std::vector<double>& t_grid, double fd_h,
                                      double tol) {
  if (t_grid.size() < 2) throw error("jacobian check needs at least two parameter values");
  AffineFitReport rep;
  rep.y0 = y0;
  rep.t = t_grid;
  rep.det.reserve(t_grid.size());

  auto F = [&](double y, double t) { return family_point(lambda_fn, t0_fn, phi_fn, y, t); };
  for (double t : t_grid) {
    complexd ft = (F(y0, t + fd_h) - F(y0, t - fd_h)) / (2.0 * fd_h);
    complexd fy = (F(y0 + fd_h, t) - F(y0 - fd_h, t)) / (2.0 * fd_h);
    complexd z = F(y0, t);
    double dens = 4.0 / ((1.0 - std::norm(z)) * (1.0 - std::norm(z)));
    rep.det.push_back(std::imag(std::conj(ft) * fy) * dens);
  }

  const auto n = static_cast<double>(t_grid.size());
  double st = 0.0, sd = 0.0, stt = 0.0, std_ = 0.0;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    st += t_grid[k];
    sd += rep.det[k];
    stt += t_grid[k] * t_grid[k];
    std_ += t_grid[k] * rep.det[k];
  }
  double denom = n * stt - st * st;
  rep.slope = (n * std_ - st * sd) / denom;
  rep.intercept = (sd - rep.slope * st) / n;

  double lo = rep.det[0], hi = rep.det[0], maxabs = 0.0, maxres = 0.0;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    lo = std::min(lo, rep.det[k]);
    hi = std::max(hi, rep.det[k]);
    maxabs = std::max(maxabs, std::abs(rep.det[k]));
    maxres = std::max(maxres, std::abs(rep.det[k] - (rep.slope * t_grid[k] + rep.intercept)));
  }
  rep.fit_residual_rel = maxres / std::max({hi - lo, maxabs, 1e-12});

  double lam = lambda_fn(y0);
  double lam_d = (lambda_fn(y0 + fd_h) - lambda_fn(y0 - fd_h)) / (2.0 * fd_h);
  double t0_at = t0_fn(y0);
  double phi_d = (phi_fn(y0 + fd_h) - phi_fn(y0 - fd_h)) / (2.0 * fd_h);
  rep.pred_slope = phi_d / lam;
  rep.pred_intercept = -(t0_at * phi_d + lam_d) / lam;
  rep.slope_err = std::abs(rep.slope - rep.pred_slope);
  rep.intercept_err = std::abs(rep.intercept - rep.pred_intercept);
  rep.ok = rep.fit_residual_rel < 1e-4 && rep.slope_err < tol && rep.intercept_err < tol;
  return rep;
}

SignReport sign_constancy_check(const AffineFitReport& rep) {
  SignReport out;
  double lo = *std::min_element(rep.t.begin(), rep.t.end());
  double hi = *std::max_element(rep.t.begin(), rep.t.end());
  if (std::abs(rep.slope) < 1e-12 * std::max(1.0, std::abs(rep.intercept))) {
    out.constant_sign = true;
    return out;
  }
  double root = -rep.intercept / rep.slope;
  if (root > lo && root < hi) {
    out.constant_sign = false;
    out.has_root = true;
    out.root = root;
  }
  return out;
}

}  // namespace horobm
