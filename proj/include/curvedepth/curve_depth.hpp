#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "curvedepth/curve.hpp"
#include "curvedepth/point_depth.hpp"
#include "curvedepth/sampling.hpp"

namespace curvedepth {

struct DepthReport {
  std::string id;
  double depth = 0.0;
  PointCloud points;                // the Z sample on the query curve
  std::vector<double> point_depths;  // depth of each Z point
  std::size_t m = 0;
  double delta = 0.0;
  DepthMethod method = DepthMethod::exact;
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo depth of `query` against the pooled reference cloud `q`.
/// The Y and Z samples on the query come from substreams keyed by `key`.
DepthReport curve_depth_against(const Curve& query, std::uint64_t key, const PointCloud& q, std::size_t m,
                                const DepthConfig& cfg, std::uint64_t seed, bool parallel_points = true);

/// Depth of one curve with respect to a sample of curves.
DepthReport curve_depth(const Curve& query, std::span<const Curve> sample, std::size_t m, const DepthConfig& cfg,
                        std::uint64_t seed);

/// Depth of every query with respect to `sample`; the reference measure is built once.
std::vector<DepthReport> depth_against(std::span<const Curve> queries, std::span<const Curve> sample,
                                       std::size_t m, const DepthConfig& cfg, std::uint64_t seed);

/// Depth of each sample curve with respect to the sample (itself included
/// unless `leave_one_out`).
std::vector<DepthReport> depth_all(std::span<const Curve> sample, std::size_t m, const DepthConfig& cfg,
                                   std::uint64_t seed, bool leave_one_out = false);

}  // namespace curvedepth
