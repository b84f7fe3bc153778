#include "horobm/svg.hpp"

#include <cstdio>
#include <sstream>

namespace horobm {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_regions_svg(const std::vector<SvgLayer>& layers, int size_px) {
  const double half = size_px / 2.0;
  auto X = [&](double x) { return half + x * half; };
  auto Y = [&](double y) { return half - y * half; };  // flip so +y is up

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\""
     << size_px << "\" viewBox=\"0 0 " << size_px << " " << size_px << "\">\n";
  os << "<rect width=\"" << size_px << "\" height=\"" << size_px << "\" fill=\"white\"/>\n";

  for (const auto& layer : layers) {
    const Region* r = layer.region;
    if (!r || r->cells.empty()) continue;
    os << "<g fill=\"" << layer.fill << "\" fill-opacity=\"" << fmt(layer.opacity) << "\">\n";
    const double sx = r->h * half;
    for (int iy = 0; iy < r->ny; ++iy) {
      int run_start = -1;
      for (int ix = 0; ix <= r->nx; ++ix) {
        bool on = ix < r->nx &&
                  r->mask[static_cast<std::size_t>(ix) + static_cast<std::size_t>(r->nx) * iy] != 0;
        if (on && run_start < 0) run_start = ix;
        if (!on && run_start >= 0) {
          double x = X(r->x0 + run_start * r->h);
          double y = Y(r->y0 + (iy + 1) * r->h);
          os << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\""
             << fmt((ix - run_start) * sx) << "\" height=\"" << fmt(sx) << "\"/>\n";
          run_start = -1;
        }
      }
    }
    os << "</g>\n";
  }

  os << "<circle cx=\"" << fmt(half) << "\" cy=\"" << fmt(half) << "\" r=\"" << fmt(half - 1.0)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  double ty = 22.0;
  for (const auto& layer : layers) {
    if (layer.label.empty()) continue;
    os << "<rect x=\"10\" y=\"" << fmt(ty - 11.0) << "\" width=\"14\" height=\"14\" fill=\""
       << layer.fill << "\" fill-opacity=\"" << fmt(layer.opacity) << "\"/>\n";
    os << "<text x=\"30\" y=\"" << fmt(ty) << "\" font-family=\"sans-serif\" font-size=\"14\">"
       << layer.label << "</text>\n";
    ty += 20.0;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace horobm
