#include "curvedepth/curve.hpp"

#include <algorithm>
#include <cmath>

#include "curvedepth/error.hpp"

namespace curvedepth {

namespace {

double segment_length(const double* a, const double* b, int dim) {
  double s = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = b[k] - a[k];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

Curve::Curve(std::string id, int dim, std::vector<double> coords) : id_(std::move(id)), dim_(dim) {
  if (dim < 1) fail_data("curve '" + id_ + "': dimension must be >= 1");
  if (coords.empty() || coords.size() % static_cast<std::size_t>(dim) != 0)
    fail_data("curve '" + id_ + "': coordinate count is not a positive multiple of the dimension");
  for (double c : coords)
    if (!std::isfinite(c)) fail_data("curve '" + id_ + "': non-finite coordinate");

  const std::size_t n = coords.size() / dim;
  coords_.reserve(coords.size());
  coords_.insert(coords_.end(), coords.begin(), coords.begin() + dim);
  for (std::size_t i = 1; i < n; ++i) {
    const double* v = coords.data() + i * dim;
    const double* last = coords_.data() + coords_.size() - dim;
    if (std::equal(v, v + dim, last)) continue;
    coords_.insert(coords_.end(), v, v + dim);
  }

  const std::size_t kept = coords_.size() / dim;
  cumulative_.assign(kept, 0.0);
  for (std::size_t i = 1; i < kept; ++i)
    cumulative_[i] = cumulative_[i - 1] +
                     segment_length(coords_.data() + (i - 1) * dim, coords_.data() + i * dim, dim);
}

Curve::Curve(std::string id, const std::vector<Point>& vertices)
    : Curve(std::move(id), vertices.empty() ? 0 : static_cast<int>(vertices.front().size()), [&] {
        std::vector<double> flat;
        if (vertices.empty()) return flat;
        const std::size_t d = vertices.front().size();
        flat.reserve(vertices.size() * d);
        for (const auto& v : vertices) {
          if (v.size() != d) fail_data("curve vertices have inconsistent dimensions");
          flat.insert(flat.end(), v.begin(), v.end());
        }
        return flat;
      }()) {}

Point Curve::point_at(double t) const {
  Point p(dim_);
  point_at(t, p);
  return p;
}

void Curve::point_at(double t, std::span<double> out) const {
  const std::size_t n = size();
  if (trivial() || t <= 0.0) {
    std::copy_n(coords_.begin(), dim_, out.begin());
    return;
  }
  if (t >= 1.0) {
    std::copy_n(coords_.begin() + (n - 1) * dim_, dim_, out.begin());
    return;
  }
  const double s = t * length();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  std::size_t j = static_cast<std::size_t>(it - cumulative_.begin());
  if (j >= n) j = n - 1;
  const std::size_t i = j - 1;
  const double seg = cumulative_[j] - cumulative_[i];
  const double w = seg > 0.0 ? (s - cumulative_[i]) / seg : 0.0;
  const double* a = coords_.data() + i * dim_;
  const double* b = coords_.data() + j * dim_;
  for (int k = 0; k < dim_; ++k) out[k] = a[k] + w * (b[k] - a[k]);
}

Curve Curve::reversed() const {
  std::vector<double> rc(coords_.size());
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    std::copy_n(coords_.begin() + (n - 1 - i) * dim_, dim_, rc.begin() + i * dim_);
  return Curve(id_, dim_, std::move(rc));
}

Curve Curve::with_id(std::string id) const {
  Curve c = *this;
  c.id_ = std::move(id);
  return c;
}

Point Curve::centroid() const {
  Point c(dim_, 0.0);
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (int k = 0; k < dim_; ++k) c[k] += coords_[i * dim_ + k];
  for (auto& v : c) v /= static_cast<double>(n);
  return c;
}

Similarity Similarity::identity(int dim) {
  Similarity f;
  f.rotation.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) f.rotation[i * dim + i] = 1.0;
  f.translation.assign(dim, 0.0);
  return f;
}

void Similarity::apply(std::span<const double> in, std::span<double> out) const {
  const int d = dim();
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += rotation[i * d + j] * in[j];
    out[i] = scale * s + translation[i];
  }
}

void check_orthogonal(std::span<const double> rotation, int dim, double tol) {
  if (rotation.size() != static_cast<std::size_t>(dim) * dim)
    fail_usage("rotation matrix has wrong size");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) s += rotation[k * dim + i] * rotation[k * dim + j];
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) fail_usage("rotation matrix is not orthogonal");
    }
}

Curve apply_similarity(const Curve& curve, const Similarity& f) {
  const int d = curve.dim();
  if (f.dim() != d) fail_usage("similarity dimension does not match curve dimension");
  if (!(f.scale > 0.0)) fail_usage("similarity scale must be positive");
  check_orthogonal(f.rotation, d);
  std::vector<double> out(curve.coords().size());
  for (std::size_t i = 0; i < curve.size(); ++i)
    f.apply(curve.vertex(i), std::span<double>(out.data() + i * d, d));
  return Curve(curve.id(), d, std::move(out));
}

std::vector<double> rotation_2d(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, -s, s, c};
}

std::vector<double> rotation_3d(double yaw, double pitch, double roll) {
  const double cz = std::cos(yaw), sz = std::sin(yaw);
  const double cy = std::cos(pitch), sy = std::sin(pitch);
  const double cx = std::cos(roll), sx = std::sin(roll);
  return {cz * cy, cz * sy * sx - sz * cx, cz * sy * cx + sz * sx,
          sz * cy, sz * sy * sx + cz * cx, sz * sy * cx - cz * sx,
          -sy,     cy * sx,                cy * cx};
}

double arc_length_between(const Curve& curve, double t1, double t2) {
  if (t2 < t1) std::swap(t1, t2);
  const int d = curve.dim();
  const double L = curve.length();
  if (L == 0.0) return 0.0;
  Point prev = curve.point_at(t1);
  double total = 0.0;
  // Walk through the interior vertices whose arc-length fraction lies in (t1, t2).
  double acc = 0.0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    acc += segment_length(curve.vertex(i - 1).data(), curve.vertex(i).data(), d);
    const double frac = acc / L;
    if (frac <= t1) continue;
    if (frac >= t2) break;
    total += segment_length(prev.data(), curve.vertex(i).data(), d);
    prev.assign(curve.vertex(i).begin(), curve.vertex(i).end());
  }
  const Point end = curve.point_at(t2);
  total += segment_length(prev.data(), end.data(), d);
  return total;
}

Curve resample(const Curve& curve, std::size_t count) {
  if (count < 2) fail_usage("resample count must be >= 2");
  const int d = curve.dim();
  if (curve.trivial()) return curve;
  std::vector<double> out(count * d);
  for (std::size_t i = 0; i < count; ++i)
    curve.point_at(static_cast<double>(i) / static_cast<double>(count - 1),
                   std::span<double>(out.data() + i * d, d));
  return Curve(curve.id(), d, std::move(out));
}

}  // namespace curvedepth
