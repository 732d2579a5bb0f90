#include "curvedepth/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "curvedepth/error.hpp"

namespace curvedepth {

std::vector<DDPoint> dd_plot(std::span<const Curve> sample0, std::span<const Curve> sample1, std::size_t m,
                             const DepthConfig& cfg, std::uint64_t seed) {
  if (sample0.empty() || sample1.empty()) fail_usage("dd-plot: both samples must be nonempty");
  std::vector<DDPoint> out;
  int label = 0;
  for (auto own : {sample0, sample1}) {
    const auto r0 = depth_against(own, sample0, m, cfg, seed);
    const auto r1 = depth_against(own, sample1, m, cfg, seed);
    for (std::size_t i = 0; i < own.size(); ++i) out.push_back({own[i].id(), label, r0[i].depth, r1[i].depth});
    ++label;
  }
  return out;
}

DDRule dd_linear_classifier(std::span<const DDPoint> points) {
  if (points.empty()) fail_usage("dd classifier: no points");
  const std::size_t n = points.size();
  std::vector<std::array<double, 2>> dirs = {{1.0, 0.0}, {0.0, 1.0}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = points[j].d0 - points[i].d0, dy = points[j].d1 - points[i].d1;
      if (dx != 0.0 || dy != 0.0) dirs.push_back({-dy, dx});
    }

  DDRule best;
  best.errors = std::numeric_limits<std::size_t>::max();
  best.margin = -1.0;
  std::vector<std::pair<double, int>> proj(n);
  const std::size_t total1 = std::count_if(points.begin(), points.end(), [](const DDPoint& p) { return p.label == 1; });
  for (const auto& w : dirs) {
    const double norm = std::hypot(w[0], w[1]);
    for (std::size_t i = 0; i < n; ++i) proj[i] = {w[0] * points[i].d0 + w[1] * points[i].d1, points[i].label};
    std::sort(proj.begin(), proj.end());
    // Threshold below position s: points [s, n) are predicted `positive`.
    std::size_t ones_below = 0;
    for (std::size_t s = 0; s <= n; ++s) {
      if (s > 0 && s < n && proj[s].first == proj[s - 1].first) {
        ones_below += proj[s].second == 1;
        continue;
      }
      double b, margin;
      if (s == 0) {
        b = proj[0].first - 1.0;
        margin = std::numeric_limits<double>::infinity();
      } else if (s == n) {
        b = proj[n - 1].first + 1.0;
        margin = std::numeric_limits<double>::infinity();
      } else {
        b = 0.5 * (proj[s - 1].first + proj[s].first);
        if (!(b < proj[s].first)) b = proj[s - 1].first;  // neighbours one ulp apart
        margin = 0.5 * (proj[s].first - proj[s - 1].first) / norm;
      }
      const std::size_t zeros_below = s - ones_below;
      const std::size_t ones_above = total1 - ones_below;
      const std::size_t zeros_above = (n - s) - ones_above;
      for (int positive : {1, 0}) {
        const std::size_t err = positive == 1 ? ones_below + zeros_above : zeros_below + ones_above;
        if (err < best.errors || (err == best.errors && margin > best.margin)) {
          best = DDRule{w[0], w[1], b, positive, err, margin};
        }
      }
      if (s < n) ones_below += proj[s].second == 1;
    }
  }
  return best;
}

WilcoxonResult wilcoxon_rank_sum(std::span<const double> x0, std::span<const double> x1) {
  if (x0.empty() || x1.empty()) fail_usage("wilcoxon: both groups must be nonempty");
  const std::size_t n0 = x0.size(), n1 = x1.size(), N = n0 + n1;
  std::vector<std::pair<double, std::size_t>> all;
  all.reserve(N);
  for (std::size_t i = 0; i < n0; ++i) all.push_back({x0[i], i});
  for (std::size_t i = 0; i < n1; ++i) all.push_back({x1[i], n0 + i});
  std::sort(all.begin(), all.end());

  double w = 0.0, tie_sum = 0.0;
  for (std::size_t i = 0; i < N;) {
    std::size_t j = i;
    while (j < N && all[j].first == all[i].first) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    const double t = static_cast<double>(j - i);
    tie_sum += t * t * t - t;
    for (std::size_t k = i; k < j; ++k)
      if (all[k].second < n0) w += midrank;
    i = j;
  }
  const double dn0 = static_cast<double>(n0), dn1 = static_cast<double>(n1), dN = static_cast<double>(N);
  const double mean = dn0 * (dN + 1.0) / 2.0;
  const double var = dn0 * dn1 / 12.0 * ((dN + 1.0) - tie_sum / (dN * (dN - 1.0)));

  WilcoxonResult r;
  r.w = w;
  if (var > 0.0) {
    r.z = (w - mean) / std::sqrt(var);
    r.p = std::min(1.0, std::erfc(std::abs(r.z) / std::sqrt(2.0)));
  }
  r.depth0.assign(x0.begin(), x0.end());
  r.depth1.assign(x1.begin(), x1.end());
  return r;
}

WilcoxonResult wilcoxon_depth_test(std::span<const Curve> reference, std::span<const Curve> s0,
                                   std::span<const Curve> s1, std::size_t m, const DepthConfig& cfg,
                                   std::uint64_t seed) {
  if (s0.empty() || s1.empty()) fail_usage("wilcoxon: both groups must be nonempty");
  const auto d0 = depths_of(depth_against(s0, reference, m, cfg, seed));
  const auto d1 = depths_of(depth_against(s1, reference, m, cfg, seed));
  return wilcoxon_rank_sum(d0, d1);
}

std::vector<std::size_t> depth_order(std::span<const double> depths) {
  std::vector<std::size_t> order(depths.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (depths[a] != depths[b]) return depths[a] < depths[b];
    return a > b;
  });
  return order;
}

namespace {

OutlierPartition assign(std::span<const double> depths, const std::array<std::size_t, 4>& sizes) {
  OutlierPartition p;
  p.sizes = sizes;
  p.order = depth_order(depths);
  p.group.assign(depths.size(), kOutlier);
  std::size_t pos = 0;
  for (int g = 0; g < 4; ++g)
    for (std::size_t c = 0; c < sizes[g]; ++c) p.group[p.order[pos++]] = g;
  return p;
}

}  // namespace

OutlierPartition outlier_partition_sizes(std::span<const double> depths, const std::array<std::size_t, 4>& sizes) {
  const std::size_t total = sizes[0] + sizes[1] + sizes[2] + sizes[3];
  if (total != depths.size())
    fail_usage("outlier partition: sizes sum to " + std::to_string(total) + " but there are " +
               std::to_string(depths.size()) + " curves");
  return assign(depths, sizes);
}

OutlierPartition outlier_partition_threshold(std::span<const double> depths, double tau) {
  const std::size_t n = depths.size();
  if (n == 0) fail_usage("outlier partition: no curves");
  const auto order = depth_order(depths);
  std::size_t out = 0;
  while (out < n - 1 && depths[order[out]] < tau) ++out;
  return assign(depths, {out, 0, n - 1 - out, 1});
}

std::vector<double> depths_of(std::span<const DepthReport> reports) {
  std::vector<double> d;
  d.reserve(reports.size());
  for (const auto& r : reports) d.push_back(r.depth);
  return d;
}

}  // namespace curvedepth
