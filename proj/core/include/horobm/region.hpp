#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "horobm/horocycle.hpp"

namespace horobm {

/// Measurable subset of the disc on the fixed square grid window inside
/// [-0.999, 0.999]^2. Occupied cells carry their hyperbolic area
/// (area_density at center * h^2); samples are the occupied cell centers.
struct Region {
  double h = 0.0;
  int nx = 0, ny = 0;
  double x0 = 0.0, y0 = 0.0;
  std::vector<std::uint8_t> mask;  // nx * ny, row-major (ix + nx*iy)
  std::vector<int> cells;          // occupied linear indices, ascending
  std::vector<double> weights;     // hyperbolic cell areas, aligned with cells
  double total_area = 0.0;
  double bounding_radius = 0.0;  // hyperbolic radius of an origin-centered disc containing the region

  complexd cell_center(int idx) const;
  /// Linear cell index containing z; throws when z escapes the grid window.
  int locate(complexd z) const;
  bool occupied_at(int idx) const { return idx >= 0 && mask[static_cast<std::size_t>(idx)] != 0; }

  static Region from_mask(std::vector<std::uint8_t> grid_mask, double h);
};

struct DiscSpec {
  double cx = 0.0, cy = 0.0, r = 1.0;
};

/// Union of hyperbolic discs, plus optional explicit cells (marked by a
/// contained point each).
struct RegionSpec {
  std::vector<DiscSpec> discs;
  std::vector<std::pair<double, double>> cells;
  double grid_h = 0.005;
};

/// Pair-explosion control for the quadratic-sampling operations. When
/// |A|*|B| exceeds cap, interior samples are cut to a seeded-shuffle prefix;
/// boundary samples are always retained.
struct PairSampling {
  double cap = 4e7;
  std::uint64_t seed = 811ull;
};

Region rasterize(const RegionSpec &spec, double h);
double area(const Region &r);

/// Empty region carrying only the grid geometry for spacing h.
Region blank_grid(double h);

Region minkowski_horo(const Region &A, const Region &B, double lambda, double out_h,
                      const PairSampling &sampling = {});
Region minkowski_horo_unoriented(const Region &A, const Region &B, double lambda, double out_h,
                                 const PairSampling &sampling = {});
Region minkowski_geodesic(const Region &A, const Region &B, double lambda, double out_h,
                          const PairSampling &sampling = {});
Region dilate_region(DiscPoint O, const Region &B, double t, double out_h);

/// Radius r_lambda with sinh(r_lambda/2) = (1-lambda) sinh(r0/2) + lambda sinh(r1/2).
double concentric_radius(double r0, double r1, double lambda);

/// Constant-speed geodesic lambda-point from a to b.
DiscPoint geodesic_point(DiscPoint a, DiscPoint b, double lambda);

/// Union of 1..4 hyperbolic discs with centers within hyperbolic distance 2 of
/// the origin and radii in [0.2, 1.2].
RegionSpec random_region_spec(std::mt19937_64 &rng);

/// Sample indices retained under the pair cap: boundary cells plus a
/// seeded-shuffle prefix of interior cells of size ceil(fraction * |cells|).
std::vector<int> retained_samples(const Region &r, double fraction, std::uint64_t seed);

RegionSpec parse_region_spec_json(const std::string &text);
std::string region_spec_to_json(const RegionSpec &spec);
/// Run-length-encoded occupancy rows plus total area.
std::string region_to_mask_json(const Region &r);

}  // namespace horobm
