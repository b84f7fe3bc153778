#include "horobm/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "horobm/parallel.hpp"
#include "json.hpp"

namespace horobm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MassInstance::MassInstance(std::vector<DiscPoint> pts, std::vector<double> r1,
                           std::vector<double> r2)
    : points(std::move(pts)), rho1(std::move(r1)), rho2(std::move(r2)) {
  if (points.size() != rho1.size() || points.size() != rho2.size()) {
    throw error("mass instance: mismatched lengths");
  }
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(rho1[i] >= 0.0) || !std::isfinite(rho1[i]) || !(rho2[i] >= 0.0) ||
        !std::isfinite(rho2[i])) {
      throw error("mass instance: weights must be finite and nonnegative");
    }
    s1 += rho1[i];
    s2 += rho2[i];
  }
  if (std::abs(s1 - s2) > 1e-9 * std::max(1.0, s1)) {
    throw error("mass instance: total masses must agree");
  }
}

MassInstance parse_mass_instance_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<DiscPoint> pts;
  for (const auto& p : j.at("points")) {
    pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  }
  return MassInstance(std::move(pts), j.at("rho1").get<std::vector<double>>(),
                      j.at("rho2").get<std::vector<double>>());
}

std::string mass_instance_to_json(const MassInstance& inst) {
  nlohmann::json j;
  j["points"] = nlohmann::json::array();
  for (const auto& p : inst.points) j["points"].push_back({p.x(), p.y()});
  j["rho1"] = inst.rho1;
  j["rho2"] = inst.rho2;
  return j.dump();
}

KantorovichResult solve_kantorovich(const MassInstance& inst, const SolveOpts& opts) {
  const std::size_t n = inst.size();
  if (n == 0) throw error("solve: empty instance");
  if (n > opts.size_cap) throw error("solve: instance exceeds the size cap");

  KantorovichResult res;
  res.n = n;
  res.dist.assign(n * n, 0.0);
  parallel_chunks(n, [&](std::size_t begin, std::size_t end, int) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) res.dist[i * n + j] = dist_phi(inst.points[i], inst.points[j]);
      }
    }
  });

  double total = std::accumulate(inst.rho1.begin(), inst.rho1.end(), 0.0);
  const double tol = opts.mass_tol * std::max(1.0, total);

  std::vector<double> ex(n);
  for (std::size_t i = 0; i < n; ++i) ex[i] = inst.rho1[i] - inst.rho2[i];
  std::vector<double> pi(n, 0.0);
  std::vector<double> flow(n * n, 0.0);

  std::vector<double> dist(n);
  std::vector<int> prev(n);
  std::vector<std::uint8_t> prevrev(n), seen(n);

  while (true) {
    bool any_source = false;
    for (std::size_t i = 0; i < n; ++i) {
      dist[i] = ex[i] > tol ? 0.0 : kInf;
      any_source = any_source || ex[i] > tol;
      prev[i] = -1;
      prevrev[i] = 0;
      seen[i] = 0;
    }
    if (!any_source) break;

    for (std::size_t round = 0; round < n; ++round) {
      std::size_t i = n;
      double best = kInf;
      for (std::size_t k = 0; k < n; ++k) {
        if (!seen[k] && dist[k] < best) {
          best = dist[k];
          i = k;
        }
      }
      if (i == n) break;
      seen[i] = 1;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || seen[j]) continue;
        double rc = res.dist[i * n + j] + pi[i] - pi[j];
        if (best + rc < dist[j] - 1e-15) {
          dist[j] = best + rc;
          prev[j] = static_cast<int>(i);
          prevrev[j] = 0;
        }
        if (flow[j * n + i] > tol) {
          double rc2 = -res.dist[j * n + i] + pi[i] - pi[j];
          if (best + rc2 < dist[j] - 1e-15) {
            dist[j] = best + rc2;
            prev[j] = static_cast<int>(i);
            prevrev[j] = 1;
          }
        }
      }
    }

    std::size_t t = n;
    double best_t = kInf;
    for (std::size_t j = 0; j < n; ++j) {
      if (ex[j] < -tol && dist[j] < best_t) {
        best_t = dist[j];
        t = j;
      }
    }
    if (t == n) throw error("solve: no reachable sink for remaining excess");

    for (std::size_t k = 0; k < n; ++k) pi[k] += std::min(dist[k], dist[t]);

    std::vector<std::pair<std::pair<int, int>, bool>> arcs;
    int node = static_cast<int>(t);
    while (prev[static_cast<std::size_t>(node)] != -1) {
      int par = prev[static_cast<std::size_t>(node)];
      arcs.push_back({{par, node}, prevrev[static_cast<std::size_t>(node)] != 0});
      node = par;
    }
    std::reverse(arcs.begin(), arcs.end());
    std::size_t s0 = static_cast<std::size_t>(node);

    double delta = std::min(ex[s0], -ex[t]);
    for (auto& [arc, rev] : arcs) {
      if (rev) delta = std::min(delta, flow[static_cast<std::size_t>(arc.second) * n + arc.first]);
    }
    for (auto& [arc, rev] : arcs) {
      auto a = static_cast<std::size_t>(arc.first);
      auto b = static_cast<std::size_t>(arc.second);
      if (rev) {
        flow[b * n + a] -= delta;
      } else {
        flow[a * n + b] += delta;
      }
    }
    ex[s0] -= delta;
    ex[t] += delta;
  }

  res.u = std::move(pi);
  res.w1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) res.w1 += flow[i * n + j] * res.dist[i * n + j];
  }
  return res;
}

StrainSet strain_pairs(const MassInstance& inst, const KantorovichResult& result,
                       double epsilon) {
  const std::size_t n = inst.size();
  if (epsilon < 0.0) {
    double worst_nn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double nn = kInf;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) nn = std::min(nn, result.d(i, j));
      }
      if (n > 1) worst_nn = std::max(worst_nn, nn);
    }
    epsilon = 10.0 * 1e-7 + 0.5 * worst_nn;
  }

  StrainSet out;
  out.epsilon = epsilon;
  std::vector<std::uint8_t> as_src(n, 0), as_dst(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (result.d(i, j) - (result.u[j] - result.u[i]) <= epsilon) {
        out.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        as_src[i] = 1;
        as_dst[j] = 1;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (as_src[i] && as_dst[i]) out.strain_points.push_back(static_cast<int>(i));
    if (!as_src[i] && !as_dst[i]) out.loose_points.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

double trace_gap(const Horocycle& h, complexd z) {
  EuclidCircle c = euclid_center(h);
  return std::abs(std::abs(z - c.center) - c.radius);
}

double param_of(const Horocycle& h, complexd z) {
  complexd tau = complexd(0.0, 1.0) *
                 ((1.0 + h.lambda) * z - (1.0 - h.lambda) * h.omega) / (h.omega - z);
  return h.t0 + tau.real();
}

double wrapped_angle_gap(complexd w1, complexd w2) {
  double d = std::abs(std::arg(w1 * std::conj(w2)));
  return d;
}

struct Chain {
  std::vector<int> idx;  // ordered by u ascending
};

DiscreteRay fit_chain(const MassInstance& inst, const std::vector<int>& members,
                      const std::vector<double>& u, double fit_tol, bool& valid) {
  valid = false;
  std::vector<int> order = members;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto ua = u[static_cast<std::size_t>(a)];
    auto ub = u[static_cast<std::size_t>(b)];
    if (ua != ub) return ua < ub;
    return a < b;
  });
  DiscPoint lo = inst.points[static_cast<std::size_t>(order.front())];
  DiscPoint hi = inst.points[static_cast<std::size_t>(order.back())];
  if (lo == hi) {
    return DiscreteRay{{}, Horocycle(1.0, 0.0, complexd(1.0, 0.0)), {}};
  }
  HoroSegment seg = horo_between(lo, hi);
  DiscreteRay ray{{}, seg.h, {}};
  for (int k : order) {
    complexd z = inst.points[static_cast<std::size_t>(k)].z;
    if (trace_gap(seg.h, z) <= fit_tol) {
      ray.idx.push_back(k);
      ray.t.push_back(param_of(seg.h, z));
    }
  }
  std::vector<std::size_t> perm(ray.idx.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return ray.t[a] < ray.t[b]; });
  DiscreteRay sorted{{}, ray.h, {}};
  for (std::size_t k : perm) {
    sorted.idx.push_back(ray.idx[k]);
    sorted.t.push_back(ray.t[k]);
  }
  valid = sorted.idx.size() >= 2;
  return sorted;
}

}  // namespace

std::vector<DiscreteRay> extract_rays(const MassInstance& inst, const KantorovichResult& result,
                                      const StrainSet& strain, double fit_tol) {
  const std::size_t n = inst.size();
  UnionFind uf(n);
  for (auto& [i, j] : strain.pairs) uf.unite(i, j);

  std::vector<std::vector<int>> components(n);
  std::vector<std::uint8_t> linked(n, 0);
  for (auto& [i, j] : strain.pairs) {
    linked[static_cast<std::size_t>(i)] = 1;
    linked[static_cast<std::size_t>(j)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (linked[k]) components[static_cast<std::size_t>(uf.find(static_cast<int>(k)))].push_back(
        static_cast<int>(k));
  }

  // The dual optimum is degenerate: shortest-path tree edges leave spurious
  // tight pairs that can link points of distinct curves into one component.
  // Peel each component by the best-supported curve among those through the
  // component's own tight pairs, refit through the extremes, and repeat on
  // the leftovers.
  std::vector<int> comp_of(n, -1);
  for (std::size_t k = 0; k < n; ++k) {
    if (linked[k]) comp_of[k] = uf.find(static_cast<int>(k));
  }
  std::vector<std::vector<std::pair<int, int>>> comp_pairs(n);
  for (auto& [i, j] : strain.pairs) {
    comp_pairs[static_cast<std::size_t>(uf.find(i))].push_back({i, j});
  }

  std::vector<DiscreteRay> rays;
  for (std::size_t c = 0; c < n; ++c) {
    if (components[c].size() < 2) continue;
    std::vector<std::uint8_t> left(n, 0);
    for (int k : components[c]) left[static_cast<std::size_t>(k)] = 1;
    std::size_t remaining = components[c].size();
    while (remaining >= 2) {
      std::vector<std::pair<int, int>> seeds;
      for (auto& pr : comp_pairs[c]) {
        if (left[static_cast<std::size_t>(pr.first)] && left[static_cast<std::size_t>(pr.second)]) {
          seeds.push_back(pr);
        }
      }
      if (seeds.empty()) break;
      std::size_t stride = seeds.size() > 256 ? seeds.size() / 256 : 1;
      std::vector<int> best_members;
      for (std::size_t s = 0; s < seeds.size(); s += stride) {
        DiscPoint x = inst.points[static_cast<std::size_t>(seeds[s].first)];
        DiscPoint y = inst.points[static_cast<std::size_t>(seeds[s].second)];
        if (x == y) continue;
        HoroSegment seg = horo_between(x, y);
        std::vector<int> kept;
        for (int k : components[c]) {
          if (left[static_cast<std::size_t>(k)] &&
              trace_gap(seg.h, inst.points[static_cast<std::size_t>(k)].z) <= fit_tol) {
            kept.push_back(k);
          }
        }
        if (kept.size() > best_members.size()) best_members = std::move(kept);
      }
      if (best_members.size() < 2) break;
      bool valid = false;
      DiscreteRay ray = fit_chain(inst, best_members, result.u, fit_tol, valid);
      if (!valid) break;
      for (int k : ray.idx) {
        left[static_cast<std::size_t>(k)] = 0;
        --remaining;
      }
      rays.push_back(std::move(ray));
    }
  }

  // Merge chains that landed on the same oriented curve.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t a = 0; a < rays.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < rays.size() && !merged; ++b) {
        if (wrapped_angle_gap(rays[a].h.omega, rays[b].h.omega) < fit_tol &&
            std::abs(rays[a].h.lambda - rays[b].h.lambda) < fit_tol) {
          std::vector<int> members = rays[a].idx;
          members.insert(members.end(), rays[b].idx.begin(), rays[b].idx.end());
          bool valid = false;
          DiscreteRay joined = fit_chain(inst, members, result.u, fit_tol, valid);
          if (valid && joined.idx.size() >= rays[a].idx.size() + rays[b].idx.size()) {
            rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(b));
            rays[a] = std::move(joined);
            merged = true;
          }
        }
      }
    }
  }

  // Longest chain first; on ties the chain with the smallest leading index.
  std::stable_sort(rays.begin(), rays.end(), [](const DiscreteRay& x, const DiscreteRay& y) {
    if (x.idx.size() != y.idx.size()) return x.idx.size() > y.idx.size();
    return x.idx.front() < y.idx.front();
  });
  std::vector<std::uint8_t> taken(n, 0);
  std::vector<DiscreteRay> out;
  for (auto& ray : rays) {
    DiscreteRay kept{{}, ray.h, {}};
    for (std::size_t k = 0; k < ray.idx.size(); ++k) {
      if (!taken[static_cast<std::size_t>(ray.idx[k])]) {
        taken[static_cast<std::size_t>(ray.idx[k])] = 1;
        kept.idx.push_back(ray.idx[k]);
        kept.t.push_back(ray.t[k]);
      }
    }
    if (kept.idx.size() >= 2) out.push_back(std::move(kept));
  }
  return out;
}

MassBalanceReport mass_balance(const MassInstance& inst, const std::vector<DiscreteRay>& rays,
                               const StrainSet& strain, double balance_tol) {
  MassBalanceReport rep;
  const std::size_t n = inst.size();

  for (std::size_t r = 0; r < rays.size(); ++r) {
    const auto& ray = rays[r];
    RayBalance rb;
    rb.ray = r;
    for (int k : ray.idx) {
      rb.mass1 += inst.rho1[static_cast<std::size_t>(k)];
      rb.mass2 += inst.rho2[static_cast<std::size_t>(k)];
    }
    double scale = std::max(rb.mass1, rb.mass2);
    rb.residual_rel = scale > 0.0 ? std::abs(rb.mass1 - rb.mass2) / scale : 0.0;
    rb.balance_ok = rb.residual_rel <= balance_tol;

    double suf1 = 0.0, suf2 = 0.0;
    rb.worst_suffix = 0.0;
    for (std::size_t k = ray.idx.size(); k-- > 0;) {
      suf1 += inst.rho1[static_cast<std::size_t>(ray.idx[k])];
      suf2 += inst.rho2[static_cast<std::size_t>(ray.idx[k])];
      rb.worst_suffix = std::max(rb.worst_suffix, suf1 - suf2);
    }
    rb.suffix_ok = rb.worst_suffix <= balance_tol * scale;
    rep.all_balanced = rep.all_balanced && rb.balance_ok;
    rep.all_suffix_ok = rep.all_suffix_ok && rb.suffix_ok;
    rep.per_ray.push_back(rb);
  }

  std::vector<std::uint8_t> covered(n, 0);
  for (const auto& ray : rays) {
    for (int k : ray.idx) covered[static_cast<std::size_t>(k)] = 1;
  }
  for (int k : strain.loose_points) covered[static_cast<std::size_t>(k)] = 1;
  double unbalanced = 0.0, hit = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m = std::abs(inst.rho1[i] - inst.rho2[i]);
    unbalanced += m;
    if (covered[i]) hit += m;
  }
  rep.coverage = unbalanced > 0.0 ? hit / unbalanced : 1.0;
  rep.ok = rep.all_balanced && rep.all_suffix_ok;
  return rep;
}

std::string ray_report_json(const MassInstance& inst, const std::vector<DiscreteRay>& rays,
                            const MassBalanceReport& report) {
  nlohmann::json j;
  j["ray_count"] = rays.size();
  j["coverage"] = report.coverage;
  j["rays"] = nlohmann::json::array();
  for (std::size_t r = 0; r < rays.size(); ++r) {
    const auto& ray = rays[r];
    nlohmann::json e;
    e["chain"] = ray.idx;
    e["lambda"] = ray.h.lambda;
    e["t0"] = ray.h.t0;
    e["omega_angle"] = std::arg(ray.h.omega);
    e["t"] = ray.t;
    if (r < report.per_ray.size()) {
      e["mass1"] = report.per_ray[r].mass1;
      e["mass2"] = report.per_ray[r].mass2;
      e["balance_residual_rel"] = report.per_ray[r].residual_rel;
      e["worst_suffix_excess"] = report.per_ray[r].worst_suffix;
    }
    j["rays"].push_back(e);
  }
  (void)inst;
  return j.dump(2);
}

}  // namespace horobm
