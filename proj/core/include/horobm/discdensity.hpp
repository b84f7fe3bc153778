#pragma once

#include <functional>
#include <vector>

#include "horobm/pmean.hpp"
#include "horobm/region.hpp"

namespace horobm {

/// Nonnegative function sampled on the occupied cells of a Region. The
/// integral is against hyperbolic area (cell value times cell weight).
struct DiscDensity {
  Region support;
  std::vector<double> values;  // aligned with support.cells

  double integral() const;
  /// Value lookup across the full grid; 0 on unoccupied cells.
  std::vector<double> grid_values() const;
};

DiscDensity make_density(const Region& r, const std::function<double(DiscPoint)>& fn);

/// Builds h on a fresh grid by maximizing M_p(f(x), g(y); lambda) over
/// retained pairs with f(x)g(y) > 0, each assigned to the cell holding the
/// oriented-arc lambda-point of (x, y). Boundary cells of the positive
/// supports are always retained, so the rim of the image stays covered under
/// the pair cap.
DiscDensity sup_convolution(const DiscDensity& f, const DiscDensity& g, double lambda,
                            PMeanParam p, double out_h, const PairSampling& sampling = {});

}  // namespace horobm
