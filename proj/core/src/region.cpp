#include "horobm/region.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include "horobm/parallel.hpp"
#include "json.hpp"

namespace horobm {

namespace {

constexpr double kWindow = 0.999;

struct GridGeom {
  int n;
  double origin;
};

GridGeom grid_for(double h) {
  if (!(h > 0.0) || h > 0.5) {
    throw error("grid spacing must be in (0, 0.5]");
  }
  int n = static_cast<int>(std::floor(2.0 * kWindow / h));
  return GridGeom{n, -0.5 * n * h};
}

double cell_hyp_radius(complexd center, double h) {
  double rr = std::min(std::abs(center) + h, 0.9995);
  return std::numbers::sqrt2 * h / (1.0 - rr * rr);
}

}  // namespace

complexd Region::cell_center(int idx) const {
  int ix = idx % nx;
  int iy = idx / nx;
  return complexd(x0 + (ix + 0.5) * h, y0 + (iy + 0.5) * h);
}

int Region::locate(complexd z) const {
  int ix = static_cast<int>(std::floor((z.real() - x0) / h));
  int iy = static_cast<int>(std::floor((z.imag() - y0) / h));
  if (ix < 0 || ix >= nx || iy < 0 || iy >= ny) {
    throw error("point escapes the grid window [-0.999, 0.999]^2");
  }
  return ix + nx * iy;
}

Region Region::from_mask(std::vector<std::uint8_t> grid_mask, double h) {
  GridGeom g = grid_for(h);
  Region r;
  r.h = h;
  r.nx = r.ny = g.n;
  r.x0 = r.y0 = g.origin;
  if (grid_mask.size() != static_cast<std::size_t>(g.n) * g.n) {
    throw error("from_mask: mask size does not match grid");
  }
  r.mask = std::move(grid_mask);
  double maxrad = 0.0;
  for (int idx = 0; idx < r.nx * r.ny; ++idx) {
    if (!r.mask[static_cast<std::size_t>(idx)]) continue;
    complexd c = r.cell_center(idx);
    if (std::norm(c) >= (1.0 - 1e-9) * (1.0 - 1e-9)) {
      r.mask[static_cast<std::size_t>(idx)] = 0;
      continue;
    }
    DiscPoint p(c);
    double w = area_density(p) * h * h;
    r.cells.push_back(idx);
    r.weights.push_back(w);
    r.total_area += w;
    maxrad = std::max(maxrad, hyp_dist(DiscPoint(), p) + cell_hyp_radius(c, h));
  }
  r.bounding_radius = maxrad;
  return r;
}

Region rasterize(const RegionSpec &spec, double h) {
  if (spec.discs.empty() && spec.cells.empty()) {
    throw error("rasterize: spec has no primitives");
  }
  for (const auto &d : spec.discs) {
    if (!(d.r > 0.0)) throw error("rasterize: disc radius must be positive");
  }
  GridGeom g = grid_for(h);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.n) * g.n, 0);
  std::vector<DiscPoint> centers;
  centers.reserve(spec.discs.size());
  for (const auto &d : spec.discs) centers.emplace_back(d.cx, d.cy);

  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      complexd c(g.origin + (ix + 0.5) * h, g.origin + (iy + 0.5) * h);
      if (std::norm(c) >= (1.0 - 1e-9) * (1.0 - 1e-9)) continue;
      DiscPoint p(c);
      bool in = false;
      for (std::size_t k = 0; k < spec.discs.size() && !in; ++k) {
        in = hyp_dist(p, centers[k]) <= spec.discs[k].r;
      }
      if (in) mask[static_cast<std::size_t>(ix) + static_cast<std::size_t>(g.n) * iy] = 1;
    }
  }
  if (!spec.cells.empty()) {
    Region probe;
    probe.h = h;
    probe.nx = probe.ny = g.n;
    probe.x0 = probe.y0 = g.origin;
    for (const auto &[x, y] : spec.cells) {
      mask[static_cast<std::size_t>(probe.locate(complexd(x, y)))] = 1;
    }
  }
  Region r = Region::from_mask(std::move(mask), h);
  if (r.cells.empty()) {
    throw error("rasterize: empty rasterization (resolution too coarse or spec outside window)");
  }
  return r;
}

double area(const Region &r) { return r.total_area; }

Region blank_grid(double h) {
  GridGeom g = grid_for(h);
  return Region::from_mask(std::vector<std::uint8_t>(static_cast<std::size_t>(g.n) * g.n, 0), h);
}

std::vector<int> retained_samples(const Region &r, double fraction, std::uint64_t seed) {
  const int n = static_cast<int>(r.cells.size());
  std::vector<std::uint8_t> boundary(n, 0);
  for (int k = 0; k < n; ++k) {
    int idx = r.cells[static_cast<std::size_t>(k)];
    int ix = idx % r.nx, iy = idx / r.nx;
    bool b = ix == 0 || ix == r.nx - 1 || iy == 0 || iy == r.ny - 1;
    if (!b) {
      b = !r.mask[static_cast<std::size_t>(idx - 1)] || !r.mask[static_cast<std::size_t>(idx + 1)] ||
          !r.mask[static_cast<std::size_t>(idx - r.nx)] ||
          !r.mask[static_cast<std::size_t>(idx + r.nx)];
    }
    boundary[static_cast<std::size_t>(k)] = b ? 1 : 0;
  }
  std::vector<int> keep, interior;
  for (int k = 0; k < n; ++k) {
    (boundary[static_cast<std::size_t>(k)] ? keep : interior).push_back(k);
  }
  if (fraction >= 1.0) {
    keep.insert(keep.end(), interior.begin(), interior.end());
  } else {
    std::mt19937_64 rng(seed);
    std::shuffle(interior.begin(), interior.end(), rng);
    std::size_t want = static_cast<std::size_t>(std::ceil(fraction * n));
    if (want > interior.size()) want = interior.size();
    keep.insert(keep.end(), interior.begin(), interior.begin() + static_cast<std::ptrdiff_t>(want));
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

namespace {

struct PairDomain {
  std::vector<complexd> a, b;
};

PairDomain retained_pair_domain(const Region &A, const Region &B, const PairSampling &sampling) {
  if (A.cells.empty() || B.cells.empty()) {
    throw error("minkowski: empty input region");
  }
  double na = static_cast<double>(A.cells.size());
  double nb = static_cast<double>(B.cells.size());
  double fraction = 1.0;
  if (na * nb > sampling.cap) fraction = std::sqrt(sampling.cap / (na * nb));
  std::vector<int> ka = retained_samples(A, fraction, sampling.seed);
  std::vector<int> kb = retained_samples(B, fraction, sampling.seed + 1);
  PairDomain d;
  d.a.reserve(ka.size());
  d.b.reserve(kb.size());
  for (int k : ka) d.a.push_back(A.cell_center(A.cells[static_cast<std::size_t>(k)]));
  for (int k : kb) d.b.push_back(B.cell_center(B.cells[static_cast<std::size_t>(k)]));
  return d;
}

template <typename MapFn>
Region map_pairs(const Region &A, const Region &B, double out_h, const PairSampling &sampling,
                 MapFn &&map) {
  PairDomain dom = retained_pair_domain(A, B, sampling);
  GridGeom g = grid_for(out_h);
  Region probe;
  probe.h = out_h;
  probe.nx = probe.ny = g.n;
  probe.x0 = probe.y0 = g.origin;

  const std::size_t total = dom.a.size() * dom.b.size();
  const std::size_t cellcount = static_cast<std::size_t>(g.n) * g.n;
  std::vector<std::vector<std::uint8_t>> partial;
  std::mutex partial_mutex;
  parallel_chunks(total, [&](std::size_t begin, std::size_t end, int) {
    std::vector<std::uint8_t> local(cellcount, 0);
    const std::size_t nb = dom.b.size();
    for (std::size_t pair = begin; pair < end; ++pair) {
      complexd za = dom.a[pair / nb];
      complexd zb = dom.b[pair % nb];
      map(za, zb, probe, local);
    }
    std::scoped_lock lk(partial_mutex);
    partial.push_back(std::move(local));
  });
  std::vector<std::uint8_t> mask(cellcount, 0);
  for (const auto &p : partial) {
    for (std::size_t k = 0; k < cellcount; ++k) mask[k] |= p[k];
  }
  return Region::from_mask(std::move(mask), out_h);
}

}  // namespace

Region minkowski_horo(const Region &A, const Region &B, double lambda, double out_h,
                      const PairSampling &sampling) {
  return map_pairs(A, B, out_h, sampling,
                   [lambda](complexd za, complexd zb, const Region &probe,
                            std::vector<std::uint8_t> &local) {
                     DiscPoint z = horo_point(DiscPoint(za), DiscPoint(zb), lambda);
                     local[static_cast<std::size_t>(probe.locate(z.z))] = 1;
                   });
}

Region minkowski_horo_unoriented(const Region &A, const Region &B, double lambda, double out_h,
                                 const PairSampling &sampling) {
  return map_pairs(A, B, out_h, sampling,
                   [lambda](complexd za, complexd zb, const Region &probe,
                            std::vector<std::uint8_t> &local) {
                     DiscPoint z = horo_point(DiscPoint(za), DiscPoint(zb), lambda);
                     local[static_cast<std::size_t>(probe.locate(z.z))] = 1;
                     DiscPoint m = horo_point(DiscPoint(std::conj(za)), DiscPoint(std::conj(zb)),
                                              lambda);
                     local[static_cast<std::size_t>(probe.locate(std::conj(m.z)))] = 1;
                   });
}

DiscPoint geodesic_point(DiscPoint a, DiscPoint b, double lambda) {
  if (a.z == b.z) return a;
  complexd w = (b.z - a.z) / (1.0 - std::conj(a.z) * b.z);
  double rho = std::sqrt(std::norm(w));
  if (rho == 0.0) return a;
  double re = std::tanh(lambda * std::atanh(rho));
  complexd zeta = (w / rho) * re;
  return DiscPoint((zeta + a.z) / (1.0 + std::conj(a.z) * zeta));
}

Region minkowski_geodesic(const Region &A, const Region &B, double lambda, double out_h,
                          const PairSampling &sampling) {
  return map_pairs(A, B, out_h, sampling,
                   [lambda](complexd za, complexd zb, const Region &probe,
                            std::vector<std::uint8_t> &local) {
                     DiscPoint z = geodesic_point(DiscPoint(za), DiscPoint(zb), lambda);
                     local[static_cast<std::size_t>(probe.locate(z.z))] = 1;
                   });
}

Region dilate_region(DiscPoint O, const Region &B, double t, double out_h) {
  if (B.cells.empty()) throw error("dilate_region: empty input region");
  if (!(t > 0.0)) throw error("dilate_region: factor must be positive");
  GridGeom g = grid_for(out_h);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.n) * g.n, 0);
  const double o_rad = hyp_dist(DiscPoint(), O);
  // Membership by preimage: z is in the dilated set iff scaling the chord
  // from O back by 1/t lands on an occupied cell of B.
  for (int iy = 0; iy < g.n; ++iy) {
    for (int ix = 0; ix < g.n; ++ix) {
      complexd c(g.origin + (ix + 0.5) * out_h, g.origin + (iy + 0.5) * out_h);
      if (std::norm(c) >= (1.0 - 1e-9) * (1.0 - 1e-9)) continue;
      DiscPoint z(c);
      double pre_rad = 2.0 * std::asinh(std::sinh(hyp_dist(O, z) / 2.0) / t);
      if (pre_rad - o_rad > B.bounding_radius) continue;
      try {
        DiscPoint w = horo_dilate(O, z, 1.0 / t);
        if (std::norm(w.z) >= kWindow * kWindow) continue;
        if (B.occupied_at(B.locate(w.z))) {
          mask[static_cast<std::size_t>(ix) + static_cast<std::size_t>(g.n) * iy] = 1;
        }
      } catch (const error &) {
        continue;
      }
    }
  }
  return Region::from_mask(std::move(mask), out_h);
}

double concentric_radius(double r0, double r1, double lambda) {
  if (r0 < 0.0 || r1 < 0.0) throw error("concentric_radius: radii must be nonnegative");
  return 2.0 * std::asinh((1.0 - lambda) * std::sinh(r0 / 2.0) + lambda * std::sinh(r1 / 2.0));
}

RegionSpec random_region_spec(std::mt19937_64 &rng) {
  auto u01 = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
  RegionSpec spec;
  int k = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < k; ++i) {
    double dist = 2.0 * u01();
    double ang = 2.0 * std::numbers::pi * u01();
    double rad = std::tanh(dist / 2.0);
    DiscSpec d;
    d.cx = rad * std::cos(ang);
    d.cy = rad * std::sin(ang);
    d.r = 0.2 + u01();
    spec.discs.push_back(d);
  }
  return spec;
}

RegionSpec parse_region_spec_json(const std::string &text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RegionSpec spec;
  if (j.contains("model") && j.at("model").get<std::string>() != "poincare-disc") {
    throw error("region spec: unsupported model");
  }
  if (j.contains("discs")) {
    for (const auto &d : j.at("discs")) {
      spec.discs.push_back(DiscSpec{d.at("cx").get<double>(), d.at("cy").get<double>(),
                                    d.at("r").get<double>()});
    }
  }
  if (j.contains("cells")) {
    for (const auto &c : j.at("cells")) {
      spec.cells.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    }
  }
  if (j.contains("grid_h")) spec.grid_h = j.at("grid_h").get<double>();
  return spec;
}

std::string region_spec_to_json(const RegionSpec &spec) {
  nlohmann::json j;
  j["model"] = "poincare-disc";
  j["grid_h"] = spec.grid_h;
  j["discs"] = nlohmann::json::array();
  for (const auto &d : spec.discs) {
    j["discs"].push_back({{"cx", d.cx}, {"cy", d.cy}, {"r", d.r}});
  }
  if (!spec.cells.empty()) {
    j["cells"] = nlohmann::json::array();
    for (const auto &[x, y] : spec.cells) j["cells"].push_back({x, y});
  }
  return j.dump();
}

std::string region_to_mask_json(const Region &r) {
  nlohmann::json j;
  j["model"] = "poincare-disc";
  j["grid_h"] = r.h;
  j["nx"] = r.nx;
  j["ny"] = r.ny;
  j["x0"] = r.x0;
  j["y0"] = r.y0;
  j["total_area"] = r.total_area;
  nlohmann::json rows = nlohmann::json::array();
  for (int iy = 0; iy < r.ny; ++iy) {
    nlohmann::json runs = nlohmann::json::array();
    int ix = 0;
    while (ix < r.nx) {
      if (!r.mask[static_cast<std::size_t>(ix) + static_cast<std::size_t>(r.nx) * iy]) {
        ++ix;
        continue;
      }
      int start = ix;
      while (ix < r.nx && r.mask[static_cast<std::size_t>(ix) + static_cast<std::size_t>(r.nx) * iy]) {
        ++ix;
      }
      runs.push_back(start);
      runs.push_back(ix - start);
    }
    if (!runs.empty()) rows.push_back({{"row", iy}, {"runs", runs}});
  }
  j["rows"] = rows;
  return j.dump();
}

}  // namespace horobm
