#include "curvedepth/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "curvedepth/error.hpp"
#include "curvedepth/parallel.hpp"
#include "curvedepth/sampling.hpp"

namespace curvedepth {

double relative_depth(std::size_t i, std::span<const std::size_t> assignment, const DistanceMatrix& depth_table) {
  const std::size_t own = assignment[i];
  double other = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < depth_table.cols; ++l)
    if (l != own) other = std::min(other, depth_table.at(i, l));
  return depth_table.at(i, own) - other;
}

double silhouette(std::size_t i, std::span<const std::size_t> assignment, std::size_t k, const DistanceMatrix& dist) {
  std::vector<double> sum(k, 0.0);
  std::vector<std::size_t> count(k, 0);
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    if (j == i) continue;
    sum[assignment[j]] += dist.at(i, j);
    ++count[assignment[j]];
  }
  const std::size_t own = assignment[i];
  const double a = count[own] ? sum[own] / static_cast<double>(count[own]) : 0.0;
  double b = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < k; ++l)
    if (l != own && count[l]) b = std::min(b, sum[l] / static_cast<double>(count[l]));
  if (!std::isfinite(b)) return 0.0;
  const double den = std::max(a, b);
  return den > 0.0 ? (b - a) / den : 0.0;
}

namespace {

// Per-curve samples are fixed for the whole run; only cluster pools change.
struct DepthCache {
  std::size_t m;
  double delta;
  DepthConfig cfg;
  std::uint64_t seed;
  ReferenceMeasure ref;
  std::vector<PointSample> y, z;
  std::vector<std::uint64_t> keys;

  PointCloud pool(std::span<const std::size_t> assignment, std::size_t cluster) const {
    std::vector<PointSample> parts;
    std::vector<const PointCloud*> ptrs;
    parts.reserve(assignment.size());
    for (std::size_t i = 0; i < assignment.size(); ++i)
      if (assignment[i] == cluster) parts.push_back(ref.stratum(i));
    for (const auto& p : parts) ptrs.push_back(&p.points);
    return PointCloud::concat(ptrs);
  }

  double depth(std::size_t i, const PointCloud& q) const {
    const std::uint64_t dir_seed = substream_seed(seed, keys[i], StreamRole::directions);
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      Rng rd(mix_seed(dir_seed, j));
      sum += point_depth(z[i].points.point(j), y[i].points, q, cfg, rd);
    }
    return sum / static_cast<double>(m);
  }
};

void refresh_columns(const DepthCache& cache, std::span<const std::size_t> assignment,
                     const std::vector<std::size_t>& clusters, DistanceMatrix& table) {
  std::vector<PointCloud> pools;
  for (std::size_t c : clusters) pools.push_back(cache.pool(assignment, c));
  const std::size_t n = assignment.size();
  parallel_for(n * clusters.size(), [&](std::size_t p) {
    const std::size_t i = p % n, c = p / n;
    table.at(i, clusters[c]) = cache.depth(i, pools[c]);
  });
}

void score(Partition& part, const DistanceMatrix& table, const DistanceMatrix& dist, double lambda) {
  const std::size_t n = part.assignment.size();
  part.red.resize(n);
  part.sil.resize(n);
  part.cost.resize(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    part.red[i] = relative_depth(i, part.assignment, table);
    part.sil[i] = silhouette(i, part.assignment, part.k, dist);
    part.cost[i] = (1.0 - lambda) * part.sil[i] + lambda * part.red[i];
    sum += part.cost[i];
  }
  part.total = sum / static_cast<double>(n);
}

}  // namespace

namespace {

Partition anneal(std::size_t n, const ClusterOptions& opt, const DepthCache& cache, const DistanceMatrix& dist,
                 Rng& rng) {
  const std::size_t K = opt.k;
  Partition part;
  part.k = K;
  if (!opt.initial.empty()) {
    part.assignment = opt.initial;
  } else {
    part.assignment.resize(n);
    for (std::size_t i = 0; i < n; ++i) part.assignment[i] = i % K;
    std::shuffle(part.assignment.begin(), part.assignment.end(), rng.engine());
  }

  DistanceMatrix table{n, K, std::vector<double>(n * K, 0.0)};
  std::vector<std::size_t> all(K);
  std::iota(all.begin(), all.end(), 0);
  refresh_columns(cache, part.assignment, all, table);
  score(part, table, dist, opt.lambda);

  double beta = opt.beta0;
  std::size_t stall = 0;
  while (stall < opt.stall && part.iterations < opt.max_iter) {
    std::vector<std::size_t> S;
    for (std::size_t i = 0; i < n; ++i)
      if (part.cost[i] < opt.threshold) S.push_back(i);

    bool changed = false;
    while (!S.empty()) {
      std::shuffle(S.begin(), S.end(), rng.engine());
      const std::size_t e = std::min(S.size(), std::max<std::size_t>(1, (S.size() + 3) / 4));

      Partition cand = part;
      std::vector<std::size_t> sizes(K, 0);
      for (std::size_t a : cand.assignment) ++sizes[a];
      std::vector<char> touched(K, 0);
      for (std::size_t t = 0; t < e; ++t) {
        const std::size_t i = S[t];
        std::size_t to = 0;
        for (std::size_t l = 1; l < K; ++l)
          if (table.at(i, l) > table.at(i, to)) to = l;
        const std::size_t from = cand.assignment[i];
        if (to == from || sizes[from] == 1) continue;  // never empty a cluster
        --sizes[from];
        ++sizes[to];
        cand.assignment[i] = to;
        touched[from] = touched[to] = 1;
      }
      S.erase(S.begin(), S.begin() + static_cast<std::ptrdiff_t>(e));

      std::vector<std::size_t> cols;
      for (std::size_t l = 0; l < K; ++l)
        if (touched[l]) cols.push_back(l);
      if (cols.empty()) continue;

      DistanceMatrix cand_table = table;
      refresh_columns(cache, cand.assignment, cols, cand_table);
      score(cand, cand_table, dist, opt.lambda);

      bool accept = cand.total > part.total;
      if (!accept) {
        const double dc = part.total - cand.total;
        const double p = opt.paper_acceptance ? 1.0 - std::exp(beta * dc) / 2.0 : std::exp(-std::abs(beta) * dc) / 2.0;
        accept = rng.uniform() < p;
      }
      if (accept) {
        cand.iterations = part.iterations;
        cand.accepted = part.accepted + 1;
        part = std::move(cand);
        table = std::move(cand_table);
        changed = true;
      }
    }
    beta *= 2.0;
    ++part.iterations;
    stall = changed ? 0 : stall + 1;
  }
  return part;
}

}  // namespace

Partition ddclust(std::span<const Curve> curves, const ClusterOptions& opt, std::uint64_t seed) {
  const std::size_t n = curves.size();
  const std::size_t K = opt.k;
  if (K < 2) fail_usage("clustering: K must be >= 2");
  if (K > n) fail_usage("clustering: K exceeds the number of curves");
  if (opt.lambda < 0.0 || opt.lambda > 1.0) fail_usage("clustering: lambda must lie in [0, 1]");
  if (opt.threshold > 0.0) fail_usage("clustering: threshold T must be <= 0");
  if (opt.m == 0) fail_usage("clustering: m must be >= 1");
  if (opt.restarts == 0) fail_usage("clustering: restarts must be >= 1");
  if (!opt.initial.empty()) {
    if (opt.initial.size() != n) fail_usage("clustering: initial assignment has wrong length");
    std::vector<std::size_t> sizes(K, 0);
    for (std::size_t a : opt.initial) {
      if (a >= K) fail_usage("clustering: initial assignment out of range");
      ++sizes[a];
    }
    if (std::count(sizes.begin(), sizes.end(), 0)) fail_usage("clustering: initial assignment leaves a cluster empty");
  }

  DepthCache cache;
  cache.m = opt.m;
  cache.cfg = opt.depth;
  cache.delta = opt.depth.resolved_delta(opt.m);
  cache.cfg.delta = cache.delta;
  cache.seed = seed;
  cache.ref = build_reference(curves, opt.m, seed);
  cache.keys = curve_keys(curves);
  cache.y.resize(n);
  cache.z.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng ry(substream_seed(seed, cache.keys[i], StreamRole::query_y));
    Rng rz(substream_seed(seed, cache.keys[i], StreamRole::query_z));
    cache.y[i] = sample_on_curve(curves[i], opt.m, ry);
    cache.z[i] = sample_on_curve(curves[i], opt.m, rz);
  }
  const DistanceMatrix dist = curve_distance_matrix(curves, opt.distance);

  Partition best;
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    Rng rng(substream_seed(seed, r, StreamRole::clustering));
    Partition p = anneal(n, opt, cache, dist, rng);
    p.restart = r;
    if (r == 0 || p.total > best.total) best = std::move(p);
  }
  return best;
}

}  // namespace curvedepth
