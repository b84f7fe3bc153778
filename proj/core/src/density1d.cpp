#include "horobm/density1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace horobm {

Density1D::Density1D(double a_, double b_, std::vector<double> v)
    : a(a_), b(b_), values(std::move(v)) {
  if (!(a < b)) throw error("density interval must have positive length");
  if (values.size() < 2) throw error("density needs at least two nodes");
  for (double x : values) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw error("density values must be finite and nonnegative");
  }
}

Density1D Density1D::tabulate(double a, double b, std::size_t cells,
                              const std::function<double(double)>& fn) {
  if (cells == 0) throw error("density needs at least one cell");
  std::vector<double> v(cells + 1);
  double h = (b - a) / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) v[i] = fn(a + static_cast<double>(i) * h);
  return Density1D(a, b, std::move(v));
}

double Density1D::integral() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) s += values[i] + values[i + 1];
  return 0.5 * s * step();
}

double Density1D::value_at(double x) const {
  if (x < a || x > b) return 0.0;
  double h = step();
  double u = (x - a) / h;
  auto k = static_cast<std::size_t>(u);
  if (k >= cells()) k = cells() - 1;
  double s = u - static_cast<double>(k);
  return values[k] + (values[k + 1] - values[k]) * s;
}

double Density1D::cdf(double x) const {
  if (x <= a) return 0.0;
  if (x >= b) return integral();
  double h = step();
  double u = (x - a) / h;
  auto k = static_cast<std::size_t>(u);
  if (k >= cells()) k = cells() - 1;
  double cum = 0.0;
  for (std::size_t i = 0; i < k; ++i) cum += 0.5 * (values[i] + values[i + 1]) * h;
  double s = x - node(k);
  double slope = (values[k + 1] - values[k]) / h;
  return cum + values[k] * s + 0.5 * slope * s * s;
}

double Density1D::tail(double x) const { return integral() - cdf(x); }

double quantile_map(const Density1D& f, double xi) {
  if (!(xi > 0.0 && xi < 1.0)) throw error("quantile level must lie in (0, 1)");
  double mass = f.integral();
  if (!(mass > 0.0)) throw error("quantile of a zero-mass density");
  double target = xi * mass;
  double h = f.step();
  double cum = 0.0;
  for (std::size_t k = 0; k < f.cells(); ++k) {
    double cell = 0.5 * (f.values[k] + f.values[k + 1]) * h;
    if (cum + cell >= target) {
      double d = target - cum;
      if (d <= 0.0) return f.node(k);
      double v = f.values[k];
      double slope = (f.values[k + 1] - v) / h;
      double disc = v * v + 2.0 * slope * d;
      double s = 2.0 * d / (v + std::sqrt(std::max(disc, 0.0)));
      return f.node(k) + std::min(s, h);
    }
    cum += cell;
  }
  return f.b;
}

bool check_dominance(const Density1D& f, const Density1D& g, double slack) {
  double mf = f.integral();
  double mg = g.integral();
  if (!(mf > 0.0) || !(mg > 0.0)) throw error("dominance check needs positive masses");
  auto violates = [&](double t) {
    return f.tail(t) / mf > g.tail(t) / mg + slack;
  };
  for (const Density1D* d : {&f, &g}) {
    for (std::size_t i = 0; i <= d->cells(); ++i) {
      double t = d->node(i);
      if (violates(t)) return false;
      if (i < d->cells() && violates(t + 0.5 * d->step())) return false;
    }
  }
  return true;
}

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> raw) {
  std::vector<std::pair<double, double>> kept;
  for (auto& p : raw) {
    if (p.second >= p.first) kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end());
  for (auto& p : kept) {
    if (!parts.empty() && p.first <= parts.back().second) {
      parts.back().second = std::max(parts.back().second, p.second);
    } else {
      parts.push_back(p);
    }
  }
}

double IntervalSet::measure() const {
  double s = 0.0;
  for (auto& p : parts) s += p.second - p.first;
  return s;
}

bool IntervalSet::contains(double x) const {
  for (auto& p : parts) {
    if (x >= p.first && x <= p.second) return true;
  }
  return false;
}

IntervalSet directed_sum_1d(const IntervalSet& A, const IntervalSet& B, double lambda) {
  std::vector<std::pair<double, double>> out;
  for (auto& ia : A.parts) {
    for (auto& ib : B.parts) {
      if (ia.first > ib.second) continue;  // no pair with t <= s
      double lo = (1.0 - lambda) * ia.first + lambda * std::max(ia.first, ib.first);
      double hi = (1.0 - lambda) * std::min(ia.second, ib.second) + lambda * ib.second;
      out.emplace_back(lo, hi);
    }
  }
  return IntervalSet(std::move(out));
}

DirBBLReport verify_dirbbl(const Density1D& f, const Density1D& g, const Density1D& h,
                           double lambda, PMeanParam p, double slack) {
  if (p.p < -0.5) throw error("mean exponent below -1/2 is out of scope");
  double mf = f.integral();
  double mg = g.integral();
  if (!(mf > 0.0) || !(mg > 0.0)) throw error("ordered-pair inequality needs positive masses");

  DirBBLReport rep;
  rep.slack = slack;
  rep.dominance_ok = check_dominance(f, g);

  rep.hypothesis_ok = true;
  for (std::size_t i = 0; i <= f.cells() && rep.hypothesis_ok; ++i) {
    double t = f.node(i);
    double ft = f.values[i];
    if (ft <= 0.0) continue;
    for (std::size_t j = 0; j <= g.cells(); ++j) {
      double s = g.node(j);
      if (s < t) continue;
      double gs = g.values[j];
      if (gs <= 0.0) continue;
      double need = p_mean(ft, gs, lambda, p);
      if (h.value_at((1.0 - lambda) * t + lambda * s) < need - slack) {
        rep.hypothesis_ok = false;
        break;
      }
    }
  }

  rep.integral_h = h.integral();
  rep.mean_bound = p_mean(mf, mg, lambda, p.ptilde());
  rep.margin = rep.integral_h - rep.mean_bound;
  rep.ok = rep.dominance_ok && rep.hypothesis_ok && rep.margin >= -slack;
  return rep;
}

Density1D sup_convolution_1d(const Density1D& f, const Density1D& g, double lambda,
                             PMeanParam p, double step) {
  if (p.p < -0.5) throw error("mean exponent below -1/2 is out of scope");
  if (!(step > 0.0)) throw error("output step must be positive");

  struct Patch {
    double lo, hi, v;
  };
  std::vector<Patch> patches;
  double hf = f.step();
  double hg = g.step();
  for (std::size_t i = 0; i < f.cells(); ++i) {
    double fmax = std::max(f.values[i], f.values[i + 1]);
    if (fmax <= 0.0) continue;
    double t0 = f.node(i);
    double t1 = t0 + hf;
    for (std::size_t j = 0; j < g.cells(); ++j) {
      double gmax = std::max(g.values[j], g.values[j + 1]);
      if (gmax <= 0.0) continue;
      double s0 = g.node(j);
      double s1 = s0 + hg;
      if (t0 > s1) continue;
      double lo = (1.0 - lambda) * t0 + lambda * std::max(t0, s0);
      double hi = (1.0 - lambda) * std::min(t1, s1) + lambda * s1;
      patches.push_back({lo, hi, p_mean(fmax, gmax, lambda, p)});
    }
  }
  if (patches.empty()) return Density1D(0.0, 1.0, {0.0, 0.0});

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (auto& q : patches) {
    lo = std::min(lo, q.lo);
    hi = std::max(hi, q.hi);
  }
  auto n = static_cast<std::size_t>(std::ceil((hi - lo) / step));
  if (n == 0) n = 1;
  std::vector<double> out(n + 1, 0.0);
  double hh = (hi - lo) / static_cast<double>(n);
  for (auto& q : patches) {
    auto k0 = static_cast<std::size_t>(std::max(0.0, std::floor((q.lo - lo) / hh)));
    auto k1 = static_cast<std::size_t>(std::min(static_cast<double>(n - 1), std::floor((q.hi - lo) / hh)));
    for (std::size_t k = k0; k <= k1; ++k) {
      out[k] = std::max(out[k], q.v);
      out[k + 1] = std::max(out[k + 1], q.v);
    }
  }
  return Density1D(lo, hi, std::move(out));
}

AffineNeedle AffineNeedle::affine(double a, double b, double c0, double c1) {
  if (!(a < b)) throw error("needle interval must have positive length");
  if (c0 + c1 * a < 0.0 || c0 + c1 * b < 0.0) throw error("needle density must be nonnegative");
  AffineNeedle n;
  n.a = a;
  n.b = b;
  n.c0 = c0;
  n.c1 = c1;
  return n;
}

AffineNeedle AffineNeedle::dirac_at(double pos, double mass) {
  if (!(mass > 0.0)) throw error("point mass must be positive");
  AffineNeedle n;
  n.dirac = true;
  n.atom_pos = pos;
  n.atom_mass = mass;
  n.a = n.b = pos;
  return n;
}

double AffineNeedle::mass(const IntervalSet& s) const {
  if (dirac) return s.contains(atom_pos) ? atom_mass : 0.0;
  double total = 0.0;
  for (auto& p : s.parts) {
    double lo = std::max(a, p.first);
    double hi = std::min(b, p.second);
    if (hi <= lo) continue;
    total += c0 * (hi - lo) + 0.5 * c1 * (hi * hi - lo * lo);
  }
  return total;
}

NeedleBMReport needle_bm(const AffineNeedle& needle, const IntervalSet& A,
                         const IntervalSet& B, double lambda, double slack) {
  if (A.empty() || B.empty()) throw error("ordered combination needs nonempty sets");
  NeedleBMReport rep;
  IntervalSet combo = directed_sum_1d(A, B, lambda);
  rep.mass_a = needle.mass(A);
  rep.mass_b = needle.mass(B);
  rep.mass_combo = needle.mass(combo);
  if (needle.dirac) {
    bool in_a = A.contains(needle.atom_pos);
    bool in_b = B.contains(needle.atom_pos);
    rep.branch = in_a && in_b ? "dirac-both" : in_a ? "dirac-left" : in_b ? "dirac-right" : "dirac-neither";
  } else {
    if (!(rep.mass_a > 0.0)) throw error("needle carries no mass on the first set");
    rep.branch = "affine";
  }
  rep.lhs_root = std::sqrt(rep.mass_combo);
  rep.rhs_root = (1.0 - lambda) * std::sqrt(rep.mass_a) + lambda * std::sqrt(rep.mass_b);
  rep.margin = rep.lhs_root - rep.rhs_root;
  rep.ok = rep.margin >= -slack;
  return rep;
}

}  // namespace horobm
