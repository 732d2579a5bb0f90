#include <immintrin.h>

#include <bit>
#include <cmath>

#include "curvedepth/simd.hpp"

namespace curvedepth::simd {

namespace {

inline __m256d neg(__m256d v) { return _mm256_xor_pd(v, _mm256_set1_pd(-0.0)); }

void angular_keys_avx2(const double* xs, const double* ys, std::size_t n, double cx, double cy,
                       std::uint64_t* keys) {
  const __m256d vcx = _mm256_set1_pd(cx);
  const __m256d vcy = _mm256_set1_pd(cy);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d q1bits = _mm256_castsi256_pd(_mm256_set1_epi64x(std::int64_t{1} << 62));
  const __m256d q2bits = _mm256_castsi256_pd(_mm256_set1_epi64x(std::int64_t{2} << 62));
  const __m256d q3bits = _mm256_castsi256_pd(_mm256_set1_epi64x(static_cast<std::int64_t>(std::uint64_t{3} << 62)));
  const __m256d sentinel = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vcx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vcy);
    // entry direction = (p - c) rotated by -90 degrees
    const __m256d ex = dy;
    const __m256d ey = neg(dx);
    const __m256d nex = neg(ex);
    const __m256d ney = neg(ey);

    const __m256d xgt = _mm256_cmp_pd(ex, zero, _CMP_GT_OQ);
    const __m256d xge = _mm256_cmp_pd(ex, zero, _CMP_GE_OQ);
    const __m256d xlt = _mm256_cmp_pd(ex, zero, _CMP_LT_OQ);
    const __m256d xle = _mm256_cmp_pd(ex, zero, _CMP_LE_OQ);
    const __m256d ygt = _mm256_cmp_pd(ey, zero, _CMP_GT_OQ);
    const __m256d yge = _mm256_cmp_pd(ey, zero, _CMP_GE_OQ);
    const __m256d ylt = _mm256_cmp_pd(ey, zero, _CMP_LT_OQ);
    const __m256d yle = _mm256_cmp_pd(ey, zero, _CMP_LE_OQ);

    const __m256d m0 = _mm256_and_pd(xgt, yge);
    const __m256d m1 = _mm256_and_pd(xle, ygt);
    const __m256d m2 = _mm256_and_pd(xlt, yle);
    const __m256d m3 = _mm256_and_pd(xge, ylt);
    const __m256d any = _mm256_or_pd(_mm256_or_pd(m0, m1), _mm256_or_pd(m2, m3));

    // Select from the last case backwards so the first matching case wins.
    __m256d a = ney;
    __m256d b = ex;
    a = _mm256_blendv_pd(a, nex, m2);
    b = _mm256_blendv_pd(b, ney, m2);
    a = _mm256_blendv_pd(a, ey, m1);
    b = _mm256_blendv_pd(b, nex, m1);
    a = _mm256_blendv_pd(a, ex, m0);
    b = _mm256_blendv_pd(b, ey, m0);

    const __m256d frac = _mm256_add_pd(_mm256_div_pd(b, _mm256_add_pd(a, b)), zero);

    __m256d qbits = _mm256_setzero_pd();
    qbits = _mm256_blendv_pd(qbits, q1bits, m1);
    qbits = _mm256_blendv_pd(qbits, q2bits, m2);
    qbits = _mm256_blendv_pd(qbits, q3bits, m3);

    __m256d key = _mm256_or_pd(qbits, frac);
    key = _mm256_blendv_pd(sentinel, key, any);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(keys + i), _mm256_castpd_si256(key));
  }
  for (; i < n; ++i) keys[i] = direction_key(ys[i] - cy, -(xs[i] - cx));
}

void halfspace_counts_avx2(const double* const* axes, int dim, std::size_t n, const double* origin,
                           const double* u, std::size_t* positive, std::size_t* zero) {
  std::size_t pos = 0, zer = 0;
  const __m256d vz = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(axes[0] + i), _mm256_set1_pd(origin[0])),
                              _mm256_set1_pd(u[0]));
    for (int k = 1; k < dim; ++k) {
      const __m256d t = _mm256_mul_pd(
          _mm256_sub_pd(_mm256_loadu_pd(axes[k] + i), _mm256_set1_pd(origin[k])), _mm256_set1_pd(u[k]));
      s = _mm256_add_pd(s, t);
    }
    pos += std::popcount(static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(s, vz, _CMP_GT_OQ))));
    zer += std::popcount(static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(s, vz, _CMP_EQ_OQ))));
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

void distances_avx2(const double* const* axes, int dim, std::size_t n, const double* a, double* out) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(axes[0] + j), _mm256_set1_pd(a[0]));
    __m256d s = _mm256_mul_pd(d0, d0);
    for (int k = 1; k < dim; ++k) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(axes[k] + j), _mm256_set1_pd(a[k]));
      s = _mm256_add_pd(s, _mm256_mul_pd(d, d));
    }
    _mm256_storeu_pd(out + j, _mm256_sqrt_pd(s));
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

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2, angular_keys_avx2, halfspace_counts_avx2, distances_avx2};
  return table;
}

}  // namespace curvedepth::simd
