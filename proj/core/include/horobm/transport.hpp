#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "horobm/finsler.hpp"
#include "horobm/horocycle.hpp"

namespace horobm {

/// Two mass distributions of equal total on a shared finite point set.
struct MassInstance {
  std::vector<DiscPoint> points;
  std::vector<double> rho1;
  std::vector<double> rho2;

  MassInstance() = default;
  MassInstance(std::vector<DiscPoint> pts, std::vector<double> r1, std::vector<double> r2);

  std::size_t size() const { return points.size(); }
};

MassInstance parse_mass_instance_json(const std::string& text);
std::string mass_instance_to_json(const MassInstance& inst);

struct SolveOpts {
  std::size_t size_cap = 2000;
  double mass_tol = 1e-12;
};

/// Price vector and optimum of max sum(u * (rho2 - rho1)) subject to
/// u_j - u_i <= d(x_i, x_j) under the asymmetric arc distance. Solved by
/// successive shortest augmenting paths on the complete digraph, so the
/// optimum is exact up to roundoff and u is feasible to machine precision.
struct KantorovichResult {
  std::vector<double> u;
  double w1 = 0.0;
  std::vector<double> dist;  // n*n row-major, dist[i*n+j] = d(x_i, x_j)
  std::size_t n = 0;

  double d(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
};

KantorovichResult solve_kantorovich(const MassInstance& inst, const SolveOpts& opts = {});

/// Ordered pairs whose Lipschitz constraint is tight within epsilon. A point
/// appearing on both sides of pairs is a strain point; a point in no pair is
/// loose.
struct StrainSet {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> strain_points;
  std::vector<int> loose_points;
  double epsilon = 0.0;
};

/// epsilon < 0 selects the default 10 * solver tolerance + half the largest
/// nearest-neighbor arc distance, the scale at which discretization error in
/// neighbor distances dominates.
StrainSet strain_pairs(const MassInstance& inst, const KantorovichResult& result,
                       double epsilon = -1.0);

/// Maximal tight chain fitted to one oriented horocycle: instance indices in
/// increasing parameter order, the fitted curve, and per-point parameters.
struct DiscreteRay {
  std::vector<int> idx;
  Horocycle h;
  std::vector<double> t;
};

/// Clusters strain-linked components into chains, fits the oriented horocycle
/// through each chain's extreme points (ordered by u), keeps points within
/// fit_tol of the fitted trace (model coordinates), and merges chains whose
/// fitted (omega angle, lambda) differ by less than fit_tol. Chains shorter
/// than two points are dropped.
std::vector<DiscreteRay> extract_rays(const MassInstance& inst, const KantorovichResult& result,
                                      const StrainSet& strain, double fit_tol = 1e-3);

struct RayBalance {
  std::size_t ray = 0;
  double mass1 = 0.0;
  double mass2 = 0.0;
  double residual_rel = 0.0;   // |mass1 - mass2| / max(mass1, mass2)
  bool balance_ok = false;
  double worst_suffix = 0.0;   // max over suffixes of rho1(suffix) - rho2(suffix)
  bool suffix_ok = false;
};

struct MassBalanceReport {
  std::vector<RayBalance> per_ray;
  double coverage = 1.0;  // fraction of |rho1 - rho2| mass on rays or loose points
  bool all_balanced = true;
  bool all_suffix_ok = true;
  bool ok = true;
};

/// Per-ray mass balance, terminal-segment inequalities toward the forward end,
/// and coverage of the unbalanced mass by ray points plus loose points.
MassBalanceReport mass_balance(const MassInstance& inst, const std::vector<DiscreteRay>& rays,
                               const StrainSet& strain, double balance_tol = 0.02);

std::string ray_report_json(const MassInstance& inst, const std::vector<DiscreteRay>& rays,
                            const MassBalanceReport& report);

}  // namespace horobm
