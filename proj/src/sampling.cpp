#include "curvedepth/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "curvedepth/error.hpp"

namespace curvedepth {

Point PointCloud::point(std::size_t i) const {
  Point p(dim_);
  for (int k = 0; k < dim_; ++k) p[k] = at(i, k);
  return p;
}

void PointCloud::set(std::size_t i, std::span<const double> p) {
  for (int k = 0; k < dim_; ++k) data_[k * count_ + i] = p[k];
}

PointCloud PointCloud::concat(std::span<const PointCloud* const> parts) {
  if (parts.empty()) return {};
  const int d = parts.front()->dim();
  std::size_t total = 0;
  for (const auto* p : parts) {
    if (p->dim() != d) fail_data("cannot pool point clouds of different dimensions");
    total += p->size();
  }
  PointCloud out(d, total);
  for (int k = 0; k < d; ++k) {
    double* dst = out.axis(k);
    for (const auto* p : parts) dst = std::copy_n(p->axis(k), p->size(), dst);
  }
  return out;
}

PointCloud PointCloud::slice(std::size_t first, std::size_t last) const {
  PointCloud out(dim_, last - first);
  for (int k = 0; k < dim_; ++k) std::copy(axis(k) + first, axis(k) + last, out.axis(k));
  return out;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finaliser over a combined word
  std::uint64_t z = a + 0x9E3779B97F4A7C15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t id_key(std::string_view id) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t key, StreamRole role) {
  return mix_seed(mix_seed(master, key), static_cast<std::uint64_t>(role));
}

std::vector<std::uint64_t> curve_keys(std::span<const Curve> curves) {
  std::vector<std::uint64_t> keys;
  keys.reserve(curves.size());
  std::map<std::string, std::uint64_t> seen;
  for (const auto& c : curves) {
    const std::uint64_t occurrence = seen[c.id()]++;
    const std::uint64_t k = id_key(c.id());
    keys.push_back(occurrence == 0 ? k : mix_seed(k, occurrence));
  }
  return keys;
}

PointSample sample_on_curve(const Curve& curve, std::size_t m, Rng& rng, std::uint32_t owner) {
  if (m == 0) fail_usage("sample size m must be >= 1");
  const int d = curve.dim();
  PointSample s{PointCloud(d, m), std::vector<std::uint32_t>(m, owner)};
  std::vector<double> p(d);
  // A uniform arc-length fraction picks a segment with probability
  // proportional to its length and a uniform point on it.
  for (std::size_t i = 0; i < m; ++i) {
    curve.point_at(rng.uniform(), p);
    s.points.set(i, p);
  }
  return s;
}

PointSample ReferenceMeasure::stratum(std::size_t i) const {
  const std::size_t first = i * per_curve;
  return {pooled.slice(first, first + per_curve),
          std::vector<std::uint32_t>(owner.begin() + first, owner.begin() + first + per_curve)};
}

PointCloud ReferenceMeasure::without(std::size_t i) const {
  const std::size_t first = i * per_curve;
  const PointCloud a = pooled.slice(0, first);
  const PointCloud b = pooled.slice(first + per_curve, pooled.size());
  const PointCloud* parts[] = {&a, &b};
  return PointCloud::concat(parts);
}

ReferenceMeasure build_reference(std::span<const Curve> curves, std::size_t m, std::uint64_t seed) {
  if (curves.empty()) fail_usage("reference sample must contain at least one curve");
  if (m == 0) fail_usage("sample size m must be >= 1");
  const int d = curves.front().dim();
  for (const auto& c : curves)
    if (c.dim() != d) fail_data("reference curves have mixed dimensions");

  const auto keys = curve_keys(curves);
  ReferenceMeasure ref;
  ref.per_curve = m;
  ref.pooled = PointCloud(d, curves.size() * m);
  ref.owner.resize(curves.size() * m);
  std::vector<double> p(d);
  for (std::size_t i = 0; i < curves.size(); ++i) {
    Rng rng(substream_seed(seed, keys[i], StreamRole::reference));
    for (std::size_t j = 0; j < m; ++j) {
      curves[i].point_at(rng.uniform(), p);
      ref.pooled.set(i * m + j, p);
      ref.owner[i * m + j] = static_cast<std::uint32_t>(i);
    }
  }
  return ref;
}

}  // namespace curvedepth
