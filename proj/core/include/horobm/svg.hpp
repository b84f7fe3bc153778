#pragma once

#include <string>
#include <vector>

#include "horobm/region.hpp"

namespace horobm {

struct SvgLayer {
  const Region* region = nullptr;
  std::string fill = "#4477aa";
  double opacity = 0.6;
  std::string label;
};

/// Disc figure: unit circle outline plus one rect-run layer per region,
/// labels in the top-left corner. Deterministic output bytes.
std::string render_regions_svg(const std::vector<SvgLayer>& layers, int size_px = 720);

}  // namespace horobm
