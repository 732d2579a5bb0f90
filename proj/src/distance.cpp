#include "curvedepth/distance.hpp"

#include <algorithm>

#include "curvedepth/error.hpp"
#include "curvedepth/parallel.hpp"
#include "curvedepth/simd.hpp"

namespace curvedepth {

DistanceMatrix vertex_distances(const Curve& a, const Curve& b) {
  if (a.dim() != b.dim()) fail_data("curve distance: dimension mismatch");
  const int d = a.dim();
  const std::size_t n2 = b.size();
  std::vector<double> soa(static_cast<std::size_t>(d) * n2);
  for (std::size_t j = 0; j < n2; ++j)
    for (int k = 0; k < d; ++k) soa[k * n2 + j] = b.vertex(j)[k];
  std::vector<const double*> axes(d);
  for (int k = 0; k < d; ++k) axes[k] = soa.data() + k * n2;

  DistanceMatrix m{a.size(), n2, std::vector<double>(a.size() * n2)};
  const auto& kt = simd::kernels();
  for (std::size_t i = 0; i < a.size(); ++i) kt.distances(axes.data(), d, n2, a.vertex(i).data(), &m.values[i * n2]);
  return m;
}

namespace {

// Is there a monotone path through cells <= v?
bool passable(const DistanceMatrix& c, double v, std::vector<char>& prev, std::vector<char>& cur) {
  const std::size_t R = c.rows, C = c.cols;
  prev.assign(C, 0);
  for (std::size_t i = 0; i < R; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < C; ++j) {
      bool from;
      if (i == 0 && j == 0) {
        from = true;
      } else {
        from = (i > 0 && prev[j]) || (j > 0 && cur[j - 1]) || (i > 0 && j > 0 && prev[j - 1]);
      }
      cur[j] = from && c.at(i, j) <= v;
      any |= cur[j] != 0;
    }
    if (!any) return false;
    std::swap(prev, cur);
  }
  return prev[C - 1] != 0;
}

}  // namespace

double bottleneck_path_value(const DistanceMatrix& cells) {
  if (cells.rows == 0 || cells.cols == 0) fail_usage("curve distance: empty curve");
  // Cells are removed from the largest down; the answer is the last value
  // whose removal disconnects the corners. Equivalently, the smallest cell
  // value that still leaves a path, found by bisection over sorted values.
  std::vector<double> vals = cells.values;
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  const double floor = std::max(cells.values.front(), cells.values.back());
  std::size_t lo = std::lower_bound(vals.begin(), vals.end(), floor) - vals.begin();
  std::size_t hi = vals.size() - 1;  // the maximum always passes
  std::vector<char> prev(cells.cols), cur(cells.cols);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (passable(cells, vals[mid], prev, cur)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return vals[lo];
}

double curve_distance(const Curve& a, const Curve& b, const DistanceOptions& opt) {
  if (a.dim() != b.dim()) fail_data("curve distance: dimension mismatch");
  const Curve ra = opt.resample ? resample(a, opt.resample) : a;
  const Curve rb = opt.resample ? resample(b, opt.resample) : b;
  double d = bottleneck_path_value(vertex_distances(ra, rb));
  if (opt.orientation_free && d > 0.0) d = std::min(d, bottleneck_path_value(vertex_distances(ra, rb.reversed())));
  return d;
}

DistanceMatrix curve_distance_matrix(std::span<const Curve> curves, const DistanceOptions& opt) {
  const std::size_t n = curves.size();
  for (const auto& c : curves)
    if (c.dim() != curves.front().dim()) fail_data("curve distance matrix: mixed dimensions");
  std::vector<Curve> work;
  work.reserve(n);
  for (const auto& c : curves) work.push_back(opt.resample ? resample(c, opt.resample) : c);
  DistanceOptions inner = opt;
  inner.resample = 0;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  DistanceMatrix out{n, n, std::vector<double>(n * n, 0.0)};
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    const double d = curve_distance(work[i], work[j], inner);
    out.at(i, j) = d;
    out.at(j, i) = d;
  });
  return out;
}

}  // namespace curvedepth
