#include <arm_neon.h>

#include <cmath>

#include "curvedepth/simd.hpp"

namespace curvedepth::simd {

namespace {

void angular_keys_neon(const double* xs, const double* ys, std::size_t n, double cx, double cy,
                       std::uint64_t* keys) {
  const float64x2_t vcx = vdupq_n_f64(cx);
  const float64x2_t vcy = vdupq_n_f64(cy);
  const float64x2_t zero = vdupq_n_f64(0.0);
  const uint64x2_t q1bits = vdupq_n_u64(std::uint64_t{1} << 62);
  const uint64x2_t q2bits = vdupq_n_u64(std::uint64_t{2} << 62);
  const uint64x2_t q3bits = vdupq_n_u64(std::uint64_t{3} << 62);
  const uint64x2_t sentinel = vdupq_n_u64(kZeroKey);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vcx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vcy);
    const float64x2_t ex = dy;
    const float64x2_t ey = vnegq_f64(dx);
    const float64x2_t nex = vnegq_f64(ex);
    const float64x2_t ney = vnegq_f64(ey);

    const uint64x2_t m0 = vandq_u64(vcgtq_f64(ex, zero), vcgeq_f64(ey, zero));
    const uint64x2_t m1 = vandq_u64(vcleq_f64(ex, zero), vcgtq_f64(ey, zero));
    const uint64x2_t m2 = vandq_u64(vcltq_f64(ex, zero), vcleq_f64(ey, zero));
    const uint64x2_t m3 = vandq_u64(vcgeq_f64(ex, zero), vcltq_f64(ey, zero));
    const uint64x2_t any = vorrq_u64(vorrq_u64(m0, m1), vorrq_u64(m2, m3));

    float64x2_t a = ney;
    float64x2_t b = ex;
    a = vbslq_f64(m2, nex, a);
    b = vbslq_f64(m2, ney, b);
    a = vbslq_f64(m1, ey, a);
    b = vbslq_f64(m1, nex, b);
    a = vbslq_f64(m0, ex, a);
    b = vbslq_f64(m0, ey, b);

    const float64x2_t frac = vaddq_f64(vdivq_f64(b, vaddq_f64(a, b)), zero);

    uint64x2_t qbits = vdupq_n_u64(0);
    qbits = vbslq_u64(m1, q1bits, qbits);
    qbits = vbslq_u64(m2, q2bits, qbits);
    qbits = vbslq_u64(m3, q3bits, qbits);

    uint64x2_t key = vorrq_u64(qbits, vreinterpretq_u64_f64(frac));
    key = vbslq_u64(any, key, sentinel);
    vst1q_u64(keys + i, key);
  }
  for (; i < n; ++i) keys[i] = direction_key(ys[i] - cy, -(xs[i] - cx));
}

void halfspace_counts_neon(const double* const* axes, int dim, std::size_t n, const double* origin,
                           const double* u, std::size_t* positive, std::size_t* zero) {
  std::size_t pos = 0, zer = 0;
  const float64x2_t vz = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t s = vmulq_f64(vsubq_f64(vld1q_f64(axes[0] + i), vdupq_n_f64(origin[0])), vdupq_n_f64(u[0]));
    for (int k = 1; k < dim; ++k)
      s = vaddq_f64(s, vmulq_f64(vsubq_f64(vld1q_f64(axes[k] + i), vdupq_n_f64(origin[k])), vdupq_n_f64(u[k])));
    const uint64x2_t gt = vshrq_n_u64(vcgtq_f64(s, vz), 63);
    const uint64x2_t eq = vshrq_n_u64(vceqq_f64(s, vz), 63);
    pos += vgetq_lane_u64(gt, 0) + vgetq_lane_u64(gt, 1);
    zer += vgetq_lane_u64(eq, 0) + vgetq_lane_u64(eq, 1);
  }
  for (; i < n; ++i) {
    double s = (axes[0][i] - origin[0]) * u[0];
    for (int k = 1; k < dim; ++k) s = s + (axes[k][i] - origin[k]) * u[k];
    pos += s > 0.0;
    zer += s == 0.0;
  }
  *positive = pos;
  *zero = zer;
}

void distances_neon(const double* const* axes, int dim, std::size_t n, const double* a, double* out) {
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(axes[0] + j), vdupq_n_f64(a[0]));
    float64x2_t s = vmulq_f64(d0, d0);
    for (int k = 1; k < dim; ++k) {
      const float64x2_t d = vsubq_f64(vld1q_f64(axes[k] + j), vdupq_n_f64(a[k]));
      s = vaddq_f64(s, vmulq_f64(d, d));
    }
    vst1q_f64(out + j, vsqrtq_f64(s));
  }
  for (; j < n; ++j) {
    const double d0 = axes[0][j] - a[0];
    double s = d0 * d0;
    for (int k = 1; k < dim; ++k) {
      const double d = axes[k][j] - a[k];
      s = s + d * d;
    }
    out[j] = std::sqrt(s);
  }
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{Isa::neon, angular_keys_neon, halfspace_counts_neon, distances_neon};
  return table;
}

}  // namespace curvedepth::simd
