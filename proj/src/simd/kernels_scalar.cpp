#include <bit>
#include <cmath>

#include "curvedepth/simd.hpp"

namespace curvedepth::simd {

std::uint64_t direction_key(double x, double y) {
  double a, b;
  std::uint64_t q;
  if (x > 0.0 && y >= 0.0) {
    q = 0, a = x, b = y;
  } else if (x <= 0.0 && y > 0.0) {
    q = 1, a = y, b = -x;
  } else if (x < 0.0 && y <= 0.0) {
    q = 2, a = -x, b = -y;
  } else if (x >= 0.0 && y < 0.0) {
    q = 3, a = -y, b = x;
  } else {
    return kZeroKey;
  }
  // + 0.0 turns a -0.0 ratio into +0.0 so the bit pattern orders correctly.
  const double frac = b / (a + b) + 0.0;
  return (q << 62) | std::bit_cast<std::uint64_t>(frac);
}

namespace {

void angular_keys_scalar(const double* xs, const double* ys, std::size_t n, double cx, double cy,
                         std::uint64_t* keys) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - cx;
    const double dy = ys[i] - cy;
    keys[i] = direction_key(dy, -dx);
  }
}

void halfspace_counts_scalar(const double* const* axes, int dim, std::size_t n, const double* origin,
                             const double* u, std::size_t* positive, std::size_t* zero) {
  std::size_t pos = 0, zer = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = (axes[0][i] - origin[0]) * u[0];
    for (int k = 1; k < dim; ++k) s = s + (axes[k][i] - origin[k]) * u[k];
    pos += s > 0.0;
    zer += s == 0.0;
  }
  *positive = pos;
  *zero = zer;
}

void distances_scalar(const double* const* axes, int dim, std::size_t n, const double* a, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    double d0 = axes[0][j] - a[0];
    double s = d0 * d0;
    for (int k = 1; k < dim; ++k) {
      const double d = axes[k][j] - a[k];
      s = s + d * d;
    }
    out[j] = std::sqrt(s);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar, angular_keys_scalar, halfspace_counts_scalar, distances_scalar};
  return table;
}

}  // namespace curvedepth::simd
