#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "curvedepth/curve.hpp"
#include "curvedepth/curve_depth.hpp"
#include "curvedepth/distance.hpp"

namespace curvedepth {

/// v -> R (v - center) + center + translation, R a proper rotation.
struct RigidTransform {
  std::vector<double> rotation;  // row-major d x d
  std::vector<double> translation;
  std::vector<double> center;

  static RigidTransform identity(int dim);
  int dim() const noexcept { return static_cast<int>(translation.size()); }
  void apply(std::span<const double> in, std::span<double> out) const;
  Curve apply(const Curve& c) const;
};

/// Index of the deepest curve of the sample (lowest index on ties) and its report.
std::pair<std::size_t, DepthReport> deepest(std::span<const Curve> sample, std::size_t m, const DepthConfig& cfg,
                                            std::uint64_t seed);

struct RegisterOptions {
  std::size_t restarts = 10;
  DistanceOptions distance{100, false};
  double rotation_step = 0.5;      // radians
  double translation_frac = 0.25;  // of the bounding-box diagonal
  int halvings = 8;
};

struct Registration {
  RigidTransform transform;
  std::vector<double> params;  // angle(s) then translation
  double initial_distance = 0.0;
  double distance = 0.0;
};

/// Rigid motion of `moving` (pivot: its vertex centroid) minimizing the curve
/// distance to `target`, by coordinate pattern search from `restarts` starts.
Registration register_rigid(const Curve& moving, const Curve& target, const RegisterOptions& opt,
                            std::uint64_t seed);

}  // namespace curvedepth
