#include "horobm/pmean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace horobm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool PMeanParam::pos_inf() const { return std::isinf(p) && p > 0.0; }
bool PMeanParam::neg_inf() const { return std::isinf(p) && p < 0.0; }

PMeanParam PMeanParam::q() const {
  if (pos_inf()) return PMeanParam{0.5};
  if (p == -0.5) return PMeanParam{-kInf};
  return PMeanParam{p / (1.0 + 2.0 * p)};
}

PMeanParam PMeanParam::ptilde() const {
  if (pos_inf()) return PMeanParam{1.0};
  if (p == -1.0) return PMeanParam{-kInf};
  return PMeanParam{p / (p + 1.0)};
}

double p_mean(double a, double b, double lambda, PMeanParam param) {
  if (a < 0.0 || b < 0.0) throw error("p_mean: arguments must be nonnegative");
  const double p = param.p;
  if (param.pos_inf()) return std::max(a, b);
  if (param.neg_inf()) return std::min(a, b);
  if (p == 0.0) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return std::pow(a, 1.0 - lambda) * std::pow(b, lambda);
  }
  if (p < 0.0) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double m = std::min(a, b);
    double s = (1.0 - lambda) * std::pow(a / m, p) + lambda * std::pow(b / m, p);
    return m * std::pow(s, 1.0 / p);
  }
  if (a == 0.0 && b == 0.0) return 0.0;
  double m = std::max(a, b);
  double s = (1.0 - lambda) * std::pow(a / m, p) + lambda * std::pow(b / m, p);
  return m * std::pow(s, 1.0 / p);
}

}  // namespace horobm
