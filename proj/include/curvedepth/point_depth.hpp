#pragma once

#include <cstddef>
#include <limits>
#include <span>

#include "curvedepth/sampling.hpp"

namespace curvedepth {

enum class DepthMethod { exact, random };

struct DepthConfig {
  /// Threshold on the mu-mass of admissible halfspaces. NaN means the
  /// default schedule 1/(10 m^alpha) with m the mu sample size.
  double delta = std::numeric_limits<double>::quiet_NaN();
  double alpha = 0.125;
  DepthMethod method = DepthMethod::exact;
  std::size_t k = 1000;  // directions for DepthMethod::random

  double resolved_delta(std::size_t m) const;
};

double default_delta(std::size_t m, double alpha = 0.125);

/// Throws unless 0 < delta < 1/2.
void check_delta(double delta);

// All kernels return inf over closed halfspaces H through x with
// Q(H) = 0 or mu(H)/|mu| > delta of (Q(H)/|Q|) / (mu(H)/|mu|).
// Points equal to x lie in every such halfspace.

double point_depth_1d(double x, const PointCloud& mu, const PointCloud& q, double delta);
double point_depth_exact_2d(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta);
double point_depth_exact_3d(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta);
/// Minimum over the closed halfspaces {y : <y - x, u> >= 0} of k uniform directions u.
double point_depth_random(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta,
                          std::size_t k, Rng& rng);

/// Dispatch on dimension and method. d >= 4 always uses random directions.
double point_depth(std::span<const double> x, const PointCloud& mu, const PointCloud& q, const DepthConfig& cfg,
                   Rng& rng);

}  // namespace curvedepth
