#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "curvedepth/curve.hpp"
#include "curvedepth/distance.hpp"
#include "curvedepth/point_depth.hpp"

namespace curvedepth {

struct Partition {
  std::size_t k = 0;
  std::vector<std::size_t> assignment;  // cluster index in [0, k)
  std::vector<double> red;              // relative depth
  std::vector<double> sil;              // silhouette width
  std::vector<double> cost;             // (1 - lambda) sil + lambda red
  double total = 0.0;                   // mean of cost
  std::size_t iterations = 0;
  std::size_t accepted = 0;
  std::size_t restart = 0;  // which run produced this partition
};

/// depth_table is n x K with entry (i, k) = depth of curve i w.r.t. cluster k.
double relative_depth(std::size_t i, std::span<const std::size_t> assignment, const DistanceMatrix& depth_table);

/// Silhouette width of observation i; own-cluster average is 0 for a singleton.
double silhouette(std::size_t i, std::span<const std::size_t> assignment, std::size_t k, const DistanceMatrix& dist);

struct ClusterOptions {
  std::size_t k = 2;
  double lambda = 0.5;
  double threshold = 0.0;  // T
  double beta0 = -1.0;
  std::size_t max_iter = 100;
  std::size_t stall = 5;  // M: stop after this many iterations without change
  std::size_t m = 50;
  DepthConfig depth;
  DistanceOptions distance{100, false};
  /// Use the acceptance probability 1 - exp(beta * dC) / 2 exactly as printed,
  /// instead of the decaying exp(-|beta| * dC) / 2.
  bool paper_acceptance = false;
  std::vector<std::size_t> initial;  // optional starting assignment
  /// Independent runs from fresh random partitions; the final partition with
  /// the highest total cost wins.
  std::size_t restarts = 1;
};

Partition ddclust(std::span<const Curve> curves, const ClusterOptions& opt, std::uint64_t seed);

}  // namespace curvedepth
