#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "horobm/disc.hpp"
#include "horobm/finsler.hpp"
#include "horobm/horocycle.hpp"
#include "horobm/region.hpp"
#include "horobm/transport.hpp"

namespace {

using namespace horobm;

double u01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

DiscPoint random_point(std::mt19937_64& rng, double rad) {
  double r = rad * std::sqrt(u01(rng));
  double a = 2.0 * M_PI * u01(rng);
  return DiscPoint(std::polar(r, a));
}

void BM_HoroPoint(benchmark::State& state) {
  std::mt19937_64 rng(7);
  DiscPoint x = random_point(rng, 0.8), y = random_point(rng, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(horo_point(x, y, 0.5));
  }
}
BENCHMARK(BM_HoroPoint);

void BM_DistPhi(benchmark::State& state) {
  std::mt19937_64 rng(11);
  DiscPoint x = random_point(rng, 0.8), y = random_point(rng, 0.8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_phi(x, y));
  }
}
BENCHMARK(BM_DistPhi);

void BM_Rasterize(benchmark::State& state) {
  RegionSpec spec;
  spec.discs.push_back({0.2, -0.1, 1.0});
  double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rasterize(spec, h));
  }
}
BENCHMARK(BM_Rasterize)->Arg(100)->Arg(200);

void BM_MinkowskiHoro(benchmark::State& state) {
  RegionSpec sa, sb;
  sa.discs.push_back({-0.2, 0.0, 0.8});
  sb.discs.push_back({0.3, 0.1, 0.6});
  Region a = rasterize(sa, 0.02);
  Region b = rasterize(sb, 0.02);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minkowski_horo(a, b, 0.5, 0.02, {1e6, 5}));
  }
}
BENCHMARK(BM_MinkowskiHoro);

void BM_SolveKantorovich(benchmark::State& state) {
  std::mt19937_64 rng(23);
  std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<DiscPoint> pts;
  std::vector<double> r1(n, 0.0), r2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(random_point(rng, 0.85));
    if (i < n / 2) r1[i] = 1.0; else r2[i] = 1.0;
  }
  MassInstance inst(pts, r1, r2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_kantorovich(inst));
  }
}
BENCHMARK(BM_SolveKantorovich)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
