#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curvedepth/curve.hpp"
#include "curvedepth/curve_depth.hpp"

namespace curvedepth {

struct DDPoint {
  std::string id;
  int label = 0;  // sample the curve belongs to
  double d0 = 0.0;
  double d1 = 0.0;
};

/// Every curve of both samples scored against sample 0 and sample 1.
std::vector<DDPoint> dd_plot(std::span<const Curve> sample0, std::span<const Curve> sample1, std::size_t m,
                             const DepthConfig& cfg, std::uint64_t seed);

/// Predicts `positive` when w0*d0 + w1*d1 > b, the other label otherwise.
struct DDRule {
  double w0 = 1.0, w1 = 0.0, b = 0.0;
  int positive = 1;
  std::size_t errors = 0;
  double margin = 0.0;

  int predict(double d0, double d1) const { return w0 * d0 + w1 * d1 > b ? positive : 1 - positive; }
};

/// Exhaustive search over normals of lines through pairs of points and the two
/// axes; thresholds at midpoints of consecutive projections and beyond both
/// ends. Fewest training errors, ties broken by largest margin.
DDRule dd_linear_classifier(std::span<const DDPoint> points);

struct WilcoxonResult {
  double w = 0.0;  // rank sum of group 0
  double z = 0.0;
  double p = 1.0;  // two-sided
  std::vector<double> depth0, depth1;
};

/// Rank-sum test with midranks and tie-corrected normal approximation.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> x0, std::span<const double> x1);

/// Depths of s0 and s1 w.r.t. `reference`, compared by a rank-sum test.
WilcoxonResult wilcoxon_depth_test(std::span<const Curve> reference, std::span<const Curve> s0,
                                   std::span<const Curve> s1, std::size_t m, const DepthConfig& cfg,
                                   std::uint64_t seed);

enum OutlierGroup : int { kOutlier = 0, kOuter = 1, kCentral = 2, kDeepest = 3 };

struct OutlierPartition {
  std::array<std::size_t, 4> sizes{};  // outliers, outer, central, deepest
  std::vector<int> group;               // per curve, an OutlierGroup
  std::vector<std::size_t> order;       // curve indices by ascending depth
};

/// Ascending depth order; equal depths are ordered by descending index so the
/// lowest index ranks deepest, as in deepest().
std::vector<std::size_t> depth_order(std::span<const double> depths);

OutlierPartition outlier_partition_sizes(std::span<const double> depths, const std::array<std::size_t, 4>& sizes);
/// Curves with depth < tau are outliers; the deepest curve is its own group,
/// everything else is central.
OutlierPartition outlier_partition_threshold(std::span<const double> depths, double tau);

std::vector<double> depths_of(std::span<const DepthReport> reports);

}  // namespace curvedepth
