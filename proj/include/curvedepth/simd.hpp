#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference and, where
// the target supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The
// variants perform the same floating-point operations in the same order, so
// results are bit-identical; the test suite checks this.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace curvedepth::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa);

/// Sentinel key for a point that coincides with the sweep centre.
inline constexpr std::uint64_t kZeroKey = ~std::uint64_t{0};

struct KernelTable {
  Isa isa;

  /// Angular sort key of the direction obtained by rotating (p - centre) by
  /// -90 degrees. The key orders directions counter-clockwise from +x and is
  /// exact under quarter turns: rotating a direction by 90 degrees adds 1 to
  /// the quadrant field (bits 62..63) and leaves the low bits unchanged.
  void (*angular_keys)(const double* xs, const double* ys, std::size_t n, double cx, double cy,
                       std::uint64_t* keys);

  /// Counts points with (p - origin) . u > 0 and == 0.
  void (*halfspace_counts)(const double* const* axes, int dim, std::size_t n, const double* origin,
                           const double* u, std::size_t* positive, std::size_t* zero);

  /// out[j] = |p_j - a|_2.
  void (*distances)(const double* const* axes, int dim, std::size_t n, const double* a, double* out);
};

bool supported(Isa isa);
/// Kernel table for one instruction set; throws if not supported here.
const KernelTable& kernels(Isa isa);
/// Active table: best supported ISA, unless overridden by force_isa() or the
/// CURVEDEPTH_ISA environment variable (scalar|avx2|neon).
const KernelTable& kernels();
void force_isa(Isa isa);
void reset_isa();

// Per-ISA tables, defined in the kernel translation units.
const KernelTable& scalar_table();
#if defined(CURVEDEPTH_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(CURVEDEPTH_HAVE_NEON)
const KernelTable& neon_table();
#endif

/// Scalar key of a single direction vector (x, y); kZeroKey for the zero vector.
std::uint64_t direction_key(double x, double y);
inline std::uint64_t rotate_quarter(std::uint64_t key, unsigned quarters) {
  const std::uint64_t q = ((key >> 62) + quarters) & 3u;
  return (q << 62) | (key & ((std::uint64_t{1} << 62) - 1));
}

}  // namespace curvedepth::simd
