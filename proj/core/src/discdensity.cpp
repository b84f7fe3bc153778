#include "horobm/discdensity.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "horobm/parallel.hpp"

namespace horobm {

double DiscDensity::integral() const {
  double s = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) s += values[k] * support.weights[k];
  return s;
}

std::vector<double> DiscDensity::grid_values() const {
  std::vector<double> full(static_cast<std::size_t>(support.nx) * support.ny, 0.0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    full[static_cast<std::size_t>(support.cells[k])] = values[k];
  }
  return full;
}

DiscDensity make_density(const Region& r, const std::function<double(DiscPoint)>& fn) {
  DiscDensity d;
  d.support = r;
  d.values.reserve(r.cells.size());
  for (int cell : r.cells) {
    double v = fn(DiscPoint(r.cell_center(cell)));
    if (!(v >= 0.0) || !std::isfinite(v)) throw error("density values must be finite and nonnegative");
    d.values.push_back(v);
  }
  return d;
}

namespace {

struct Samples {
  std::vector<complexd> pts;
  std::vector<double> vals;
};

Samples positive_samples(const DiscDensity& f, double fraction, std::uint64_t seed) {
  std::vector<std::uint8_t> pos(static_cast<std::size_t>(f.support.nx) * f.support.ny, 0);
  bool any = false;
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    if (f.values[k] > 0.0) {
      pos[static_cast<std::size_t>(f.support.cells[k])] = 1;
      any = true;
    }
  }
  if (!any) throw error("sup_convolution: density has empty positive support");
  std::vector<double> table = f.grid_values();
  Region carrier = Region::from_mask(std::move(pos), f.support.h);
  std::vector<int> kept = retained_samples(carrier, fraction, seed);
  Samples s;
  s.pts.reserve(kept.size());
  s.vals.reserve(kept.size());
  for (int k : kept) {
    int idx = carrier.cells[static_cast<std::size_t>(k)];
    s.pts.push_back(carrier.cell_center(idx));
    s.vals.push_back(table[static_cast<std::size_t>(idx)]);
  }
  return s;
}

}  // namespace

DiscDensity sup_convolution(const DiscDensity& f, const DiscDensity& g, double lambda,
                            PMeanParam p, double out_h, const PairSampling& sampling) {
  if (p.p < -0.5) throw error("mean exponent below -1/2 is out of scope");
  std::size_t npos_f = 0, npos_g = 0;
  for (double v : f.values) npos_f += v > 0.0 ? 1 : 0;
  for (double v : g.values) npos_g += v > 0.0 ? 1 : 0;
  double total = static_cast<double>(npos_f) * static_cast<double>(npos_g);
  double fraction = 1.0;
  if (total > sampling.cap) fraction = std::sqrt(sampling.cap / total);
  Samples fa = positive_samples(f, fraction, sampling.seed);
  Samples gb = positive_samples(g, fraction, sampling.seed + 1);

  Region probe = blank_grid(out_h);
  const std::size_t cellcount = static_cast<std::size_t>(probe.nx) * probe.ny;
  const std::size_t npairs = fa.pts.size() * gb.pts.size();

  std::vector<std::vector<double>> partial;
  std::mutex partial_mutex;
  parallel_chunks(npairs, [&](std::size_t begin, std::size_t end, int) {
    std::vector<double> local(cellcount, 0.0);
    const std::size_t nb = gb.pts.size();
    for (std::size_t pair = begin; pair < end; ++pair) {
      std::size_t i = pair / nb;
      std::size_t j = pair % nb;
      DiscPoint z = horo_point(DiscPoint(fa.pts[i]), DiscPoint(gb.pts[j]), lambda);
      auto idx = static_cast<std::size_t>(probe.locate(z.z));
      double v = p_mean(fa.vals[i], gb.vals[j], lambda, p);
      local[idx] = std::max(local[idx], v);
    }
    std::scoped_lock lk(partial_mutex);
    partial.push_back(std::move(local));
  });

  std::vector<double> table(cellcount, 0.0);
  for (const auto& part : partial) {
    for (std::size_t k = 0; k < cellcount; ++k) table[k] = std::max(table[k], part[k]);
  }
  std::vector<std::uint8_t> mask(cellcount, 0);
  for (std::size_t k = 0; k < cellcount; ++k) mask[k] = table[k] > 0.0 ? 1 : 0;

  DiscDensity h;
  h.support = Region::from_mask(std::move(mask), out_h);
  h.values.reserve(h.support.cells.size());
  for (int cell : h.support.cells) h.values.push_back(table[static_cast<std::size_t>(cell)]);
  return h;
}

}  // namespace horobm
