#include "curvedepth/curve_depth.hpp"

#include "curvedepth/error.hpp"
#include "curvedepth/parallel.hpp"

namespace curvedepth {

namespace {

void check_dims(const Curve& query, std::span<const Curve> sample) {
  if (sample.empty()) fail_usage("reference sample is empty");
  for (const auto& c : sample)
    if (c.dim() != query.dim()) fail_data("curve '" + query.id() + "' and reference sample differ in dimension");
}

}  // namespace

DepthReport curve_depth_against(const Curve& query, std::uint64_t key, const PointCloud& q, std::size_t m,
                                const DepthConfig& cfg, std::uint64_t seed, bool parallel_points) {
  if (m == 0) fail_usage("sample size m must be >= 1");
  if (q.dim() != query.dim()) fail_data("curve '" + query.id() + "' and reference sample differ in dimension");

  Rng ry(substream_seed(seed, key, StreamRole::query_y));
  Rng rz(substream_seed(seed, key, StreamRole::query_z));
  const PointSample y = sample_on_curve(query, m, ry);
  PointSample z = sample_on_curve(query, m, rz);

  DepthReport rep;
  rep.id = query.id();
  rep.m = m;
  rep.delta = cfg.resolved_delta(m);
  rep.method = cfg.method;
  rep.k = cfg.method == DepthMethod::random ? cfg.k : 0;
  rep.seed = seed;
  rep.point_depths.resize(m);

  DepthConfig fixed = cfg;
  fixed.delta = rep.delta;
  const std::uint64_t dir_seed = substream_seed(seed, key, StreamRole::directions);
  auto one = [&](std::size_t j) {
    Rng rd(mix_seed(dir_seed, j));
    const Point x = z.points.point(j);
    rep.point_depths[j] = point_depth(x, y.points, q, fixed, rd);
  };
  if (parallel_points) {
    parallel_for(m, one);
  } else {
    for (std::size_t j = 0; j < m; ++j) one(j);
  }

  double sum = 0.0;
  for (double v : rep.point_depths) sum += v;
  rep.depth = sum / static_cast<double>(m);
  rep.points = std::move(z.points);
  return rep;
}

DepthReport curve_depth(const Curve& query, std::span<const Curve> sample, std::size_t m, const DepthConfig& cfg,
                        std::uint64_t seed) {
  check_dims(query, sample);
  const ReferenceMeasure ref = build_reference(sample, m, seed);
  return curve_depth_against(query, id_key(query.id()), ref.pooled, m, cfg, seed);
}

std::vector<DepthReport> depth_against(std::span<const Curve> queries, std::span<const Curve> sample,
                                       std::size_t m, const DepthConfig& cfg, std::uint64_t seed) {
  for (const auto& c : queries) check_dims(c, sample);
  const ReferenceMeasure ref = build_reference(sample, m, seed);
  const auto keys = curve_keys(queries);
  std::vector<DepthReport> out(queries.size());
  parallel_for(queries.size(), [&](std::size_t i) {
    out[i] = curve_depth_against(queries[i], keys[i], ref.pooled, m, cfg, seed, false);
  });
  return out;
}

std::vector<DepthReport> depth_all(std::span<const Curve> sample, std::size_t m, const DepthConfig& cfg,
                                   std::uint64_t seed, bool leave_one_out) {
  if (sample.empty()) fail_usage("reference sample is empty");
  if (leave_one_out && sample.size() < 2) fail_usage("leave-one-out needs at least two curves");
  const ReferenceMeasure ref = build_reference(sample, m, seed);
  const auto keys = curve_keys(sample);
  std::vector<DepthReport> out(sample.size());
  parallel_for(sample.size(), [&](std::size_t i) {
    if (leave_one_out) {
      const PointCloud q = ref.without(i);
      out[i] = curve_depth_against(sample[i], keys[i], q, m, cfg, seed, false);
    } else {
      out[i] = curve_depth_against(sample[i], keys[i], ref.pooled, m, cfg, seed, false);
    }
  });
  return out;
}

}  // namespace curvedepth
