#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "curvedepth/curve.hpp"

namespace curvedepth {

/// Dense row-major matrix of nonnegative distances.
struct DistanceMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

/// Euclidean distances between every vertex of `a` and every vertex of `b`.
DistanceMatrix vertex_distances(const Curve& a, const Curve& b);

/// Smallest value v such that a monotone path (right, down or diagonal steps)
/// from cell (0,0) to the last cell only visits cells <= v.
double bottleneck_path_value(const DistanceMatrix& cells);

struct DistanceOptions {
  std::size_t resample = 0;       // 0: use the vertices as given
  bool orientation_free = false;  // min over both orientations of the second curve
};

double curve_distance(const Curve& a, const Curve& b, const DistanceOptions& opt = {});

/// Symmetric matrix of pairwise curve distances with zero diagonal.
DistanceMatrix curve_distance_matrix(std::span<const Curve> curves, const DistanceOptions& opt = {});

}  // namespace curvedepth
