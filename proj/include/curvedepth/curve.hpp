#pragma once

#include <span>
#include <string>
#include <vector>

namespace curvedepth {

using Point = std::vector<double>;

/// Polyline representation of an unparameterized curve.
///
/// Vertices are stored row-major (`size() x dim()`). Consecutive duplicate
/// vertices are collapsed on construction. A curve whose vertices all
/// coincide is *trivial* and behaves as a point mass.
class Curve {
 public:
  Curve() = default;
  Curve(std::string id, int dim, std::vector<double> coords);
  Curve(std::string id, const std::vector<Point>& vertices);

  const std::string& id() const noexcept { return id_; }
  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ ? coords_.size() / dim_ : 0; }
  std::span<const double> vertex(std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }

  /// Sum of segment lengths.
  double length() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
  bool trivial() const noexcept { return length() == 0.0; }

  /// Point at arc-length fraction `t` (clamped to [0,1]).
  Point point_at(double t) const;
  void point_at(double t, std::span<double> out) const;

  Curve reversed() const;
  Curve with_id(std::string id) const;
  Point centroid() const;

 private:
  std::string id_;
  int dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> cumulative_;  // cumulative_[i] = arc length up to vertex i
};

/// f(v) = scale * rotation * v + translation, rotation row-major d x d.
struct Similarity {
  double scale = 1.0;
  std::vector<double> rotation;
  std::vector<double> translation;

  static Similarity identity(int dim);
  int dim() const noexcept { return static_cast<int>(translation.size()); }
  void apply(std::span<const double> in, std::span<double> out) const;
};

/// Throws if `rotation` is not orthogonal to within `tol` (max |RᵀR - I|).
void check_orthogonal(std::span<const double> rotation, int dim, double tol = 1e-10);

Curve apply_similarity(const Curve& curve, const Similarity& f);

std::vector<double> rotation_2d(double angle);
/// Z-Y-X Euler angles.
std::vector<double> rotation_3d(double yaw, double pitch, double roll);

/// Arc-length sub-length between fractions t1 <= t2 measured along the polyline.
double arc_length_between(const Curve& curve, double t1, double t2);

/// Uniform arc-length resampling to `count` vertices (count >= 2).
Curve resample(const Curve& curve, std::size_t count);

}  // namespace curvedepth
