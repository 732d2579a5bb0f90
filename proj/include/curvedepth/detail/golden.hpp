#pragma once

#include <cmath>
#include <limits>

namespace curvedepth::oracle {

template <class F>
double grid_golden_min(F&& f, double lo, double hi, std::size_t grid) {
  if (grid < 2) grid = 2;
  const double h = (hi - lo) / static_cast<double>(grid);
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  // interior grid only: the endpoints may be singular
  for (std::size_t i = 0; i < grid; ++i) {
    const double v = f(lo + (static_cast<double>(i) + 0.5) * h);
    if (v < best) best = v, arg = i;
  }
  double a = lo + static_cast<double>(arg) * h, b = a + h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80; ++it) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  best = std::fmin(best, std::fmin(fc, fd));
  return best;
}

}  // namespace curvedepth::oracle
