#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "curvedepth/curve.hpp"
#include "curvedepth/sampling.hpp"

namespace curvedepth::oracle {

/// Depth of the k-th (1-based) of n collinear segments w.r.t. all of them.
double segments_line(std::size_t k, std::size_t n);

/// Depth of the horizontal unit segment at height y in the unit square family.
double parallel_segment(double y);

/// Probability that a uniform point on a uniformly oriented unit segment from
/// the origin has projection >= h on a fixed unit vector (0 <= h <= 1).
double star_tail(double h);
/// Depth of the point at arc-length fraction t on a star segment.
double star_point(double t);
/// Curve depth of any star segment: integral of star_point over [0, 1].
double star_population();

/// Population depth of the circle of radius r under radii ~ U(0, 1).
double circle_population(double r, std::size_t grid = 10000);
/// Sample depth of the circle of radius r w.r.t. circles with the given radii.
double circle_sample(double r, std::span<const double> radii, std::size_t grid = 10000);

/// Minimizes f over [lo, hi] by a grid scan followed by golden-section refinement.
template <class F>
double grid_golden_min(F&& f, double lo, double hi, std::size_t grid);

/// Exhaustive point depth. 2D: every closed boundary direction and every
/// open arc between critical angles. 3D: every plane through x and two data
/// points plus `random_dirs` random directions (an upper bound).
double point_depth_bruteforce(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta,
                              std::size_t random_dirs = 100000, std::uint64_t seed = 1);

/// Discrete Frechet distance by the max-min dynamic program.
double distance_dp(const Curve& a, const Curve& b);

}  // namespace curvedepth::oracle

#include "curvedepth/detail/golden.hpp"
