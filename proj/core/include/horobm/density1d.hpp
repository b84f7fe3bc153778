#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "horobm/errors.hpp"
#include "horobm/pmean.hpp"

namespace horobm {

/// Nonnegative piecewise-linear density on [a, b], tabulated at the nodes of a
/// uniform grid. Integrals, CDFs and quantiles are exact for the interpolant.
struct Density1D {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> values;  // node values, size = cells + 1

  Density1D() = default;
  Density1D(double a_, double b_, std::vector<double> v);

  static Density1D tabulate(double a, double b, std::size_t cells,
                            const std::function<double(double)>& fn);

  std::size_t cells() const { return values.size() - 1; }
  double step() const { return (b - a) / static_cast<double>(cells()); }
  double node(std::size_t i) const { return a + static_cast<double>(i) * step(); }

  double integral() const;
  double value_at(double x) const;  // 0 outside [a, b]
  double cdf(double x) const;       // mass to the left of x
  double tail(double x) const;      // mass to the right of x
};

/// Minimal t with cdf(t) >= xi * integral(). Flat CDF stretches resolve to the
/// smallest admissible t. Requires 0 < xi < 1 and positive mass.
double quantile_map(const Density1D& f, double xi);

/// True iff tail(t)/mass of f never exceeds that of g, checked at the nodes
/// and midpoints of both grids. Equivalent to f's quantiles lying left of g's.
bool check_dominance(const Density1D& f, const Density1D& g, double slack = 1e-9);

/// Finite union of closed intervals, kept sorted and disjoint.
struct IntervalSet {
  std::vector<std::pair<double, double>> parts;

  IntervalSet() = default;
  explicit IntervalSet(std::vector<std::pair<double, double>> raw);

  bool empty() const { return parts.empty(); }
  double measure() const;
  bool contains(double x) const;
};

/// {(1-lambda) t + lambda s : t in A, s in B, t <= s}, exactly on interval
/// unions. Always a subset of the unconstrained combination.
IntervalSet directed_sum_1d(const IntervalSet& A, const IntervalSet& B, double lambda);

struct DirBBLReport {
  bool dominance_ok = false;
  bool hypothesis_ok = false;
  double integral_h = 0.0;
  double mean_bound = 0.0;
  double margin = 0.0;  // integral_h - mean_bound
  double slack = 0.0;
  bool ok = false;
};

/// Checks the ordered-pair inequality: given the pointwise hypothesis
/// h((1-lambda)t + lambda s) >= M_p(f(t), g(s); lambda) on pairs t <= s with
/// f(t)g(s) > 0, and the tail-dominance condition, asserts
/// integral(h) >= M_{p/(p+1)}(integral f, integral g; lambda) - slack.
/// Dominance or hypothesis failures are reported, not thrown.
DirBBLReport verify_dirbbl(const Density1D& f, const Density1D& g, const Density1D& h,
                           double lambda, PMeanParam p, double slack = 1e-6);

/// Builds a piecewise-linear h satisfying the ordered-pair hypothesis for
/// EVERY real pair t <= s with f(t)g(s) > 0, not only grid pairs: each cell
/// pair contributes M_p of its endpoint maxima to every output node whose
/// cells meet the image interval of the pair. The result majorizes the
/// minimal admissible function by at most one modulus of continuity.
Density1D sup_convolution_1d(const Density1D& f, const Density1D& g, double lambda,
                             PMeanParam p, double step = 1e-3);

/// One-dimensional needle: density c0 + c1 t on [a, b], or a point mass.
struct AffineNeedle {
  double a = 0.0;
  double b = 1.0;
  double c0 = 1.0;
  double c1 = 0.0;
  bool dirac = false;
  double atom_pos = 0.0;
  double atom_mass = 1.0;

  static AffineNeedle affine(double a, double b, double c0, double c1);
  static AffineNeedle dirac_at(double pos, double mass);

  double mass(const IntervalSet& s) const;
};

struct NeedleBMReport {
  double mass_a = 0.0;
  double mass_b = 0.0;
  double mass_combo = 0.0;
  double lhs_root = 0.0;  // sqrt(mass_combo)
  double rhs_root = 0.0;  // (1-lambda) sqrt(mass_a) + lambda sqrt(mass_b)
  double margin = 0.0;
  std::string branch;
  bool ok = false;
};

/// Square-root concavity of needle mass under the ordered combination:
/// mass([A:B]_lambda)^{1/2} >= (1-lambda) mass(A)^{1/2} + lambda mass(B)^{1/2}.
/// Point masses branch on membership; both sides are then 0 or the atom.
NeedleBMReport needle_bm(const AffineNeedle& needle, const IntervalSet& A,
                         const IntervalSet& B, double lambda, double slack = 1e-6);

}  // namespace horobm
