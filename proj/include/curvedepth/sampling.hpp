#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "curvedepth/curve.hpp"

namespace curvedepth {

/// Points in R^d stored axis-major (structure of arrays) so kernels can
/// stream one coordinate at a time.
class PointCloud {
 public:
  PointCloud() = default;
  PointCloud(int dim, std::size_t count) : dim_(dim), count_(count), data_(dim * count) {}

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  double* axis(int k) noexcept { return data_.data() + k * count_; }
  const double* axis(int k) const noexcept { return data_.data() + k * count_; }
  double at(std::size_t i, int k) const noexcept { return data_[k * count_ + i]; }

  Point point(std::size_t i) const;
  void set(std::size_t i, std::span<const double> p);

  /// Concatenate clouds of equal dimension.
  static PointCloud concat(std::span<const PointCloud* const> parts);
  /// Copy of the index range [first, last).
  PointCloud slice(std::size_t first, std::size_t last) const;

 private:
  int dim_ = 0;
  std::size_t count_ = 0;
  std::vector<double> data_;
};

/// Deterministic random stream. Uniform variates are built from the top
/// 53 bits so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Marsaglia polar method on uniform(); std::normal_distribution differs
  // between standard libraries.
  double normal();
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }
  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class StreamRole : std::uint64_t {
  reference = 1,
  query_y = 2,
  query_z = 3,
  directions = 4,
  restart = 5,
  clustering = 6,
  generator = 7,
};

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
/// FNV-1a hash of a curve id.
std::uint64_t id_key(std::string_view id);
/// Seed of the substream for (master, key, role).
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t key, StreamRole role);

/// Stream keys for a list of curves: the id hash, mixed with the occurrence
/// number when an id repeats. Keys do not depend on list position for unique ids.
std::vector<std::uint64_t> curve_keys(std::span<const Curve> curves);

/// Points drawn i.i.d. from the arc-length measure of one curve.
struct PointSample {
  PointCloud points;
  std::vector<std::uint32_t> owner;
};

PointSample sample_on_curve(const Curve& curve, std::size_t m, Rng& rng, std::uint32_t owner = 0);

/// Pooled stratified sample: stratum i is rows [i*m, (i+1)*m) of `pooled`.
struct ReferenceMeasure {
  std::size_t per_curve = 0;
  PointCloud pooled;
  std::vector<std::uint32_t> owner;

  std::size_t strata() const noexcept { return per_curve ? pooled.size() / per_curve : 0; }
  PointSample stratum(std::size_t i) const;
  /// Pooled cloud without stratum i (leave-one-out).
  PointCloud without(std::size_t i) const;
};

ReferenceMeasure build_reference(std::span<const Curve> curves, std::size_t m, std::uint64_t seed);

}  // namespace curvedepth
