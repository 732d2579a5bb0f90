#include "curvedepth/registration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "curvedepth/error.hpp"
#include "curvedepth/parallel.hpp"

namespace curvedepth {

RigidTransform RigidTransform::identity(int dim) {
  const Similarity s = Similarity::identity(dim);
  return {s.rotation, std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
}

void RigidTransform::apply(std::span<const double> in, std::span<double> out) const {
  const int d = dim();
  // (x - c) + c need not round-trip, so the identity map is special-cased
  bool ident = true;
  for (int i = 0; i < d && ident; ++i) {
    ident = translation[i] == 0.0;
    for (int j = 0; j < d; ++j) ident = ident && rotation[i * d + j] == (i == j ? 1.0 : 0.0);
  }
  if (ident) {
    std::copy(in.begin(), in.begin() + d, out.begin());
    return;
  }
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += rotation[i * d + j] * (in[j] - center[j]);
    out[i] = s + center[i] + translation[i];
  }
}

Curve RigidTransform::apply(const Curve& c) const {
  if (c.dim() != dim()) fail_usage("transform dimension does not match curve dimension");
  const int d = dim();
  std::vector<double> out(c.coords().size());
  for (std::size_t i = 0; i < c.size(); ++i) apply(c.vertex(i), std::span<double>(out.data() + i * d, d));
  return Curve(c.id(), d, std::move(out));
}

std::pair<std::size_t, DepthReport> deepest(std::span<const Curve> sample, std::size_t m, const DepthConfig& cfg,
                                            std::uint64_t seed) {
  auto reports = depth_all(sample, m, cfg, seed);
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i)
    if (reports[i].depth > reports[best].depth) best = i;
  return {best, std::move(reports[best])};
}

namespace {

RigidTransform from_params(const std::vector<double>& p, int d, const Point& center) {
  RigidTransform t;
  t.center = center;
  if (d == 2) {
    t.rotation = rotation_2d(p[0]);
    t.translation = {p[1], p[2]};
  } else {
    t.rotation = rotation_3d(p[0], p[1], p[2]);
    t.translation = {p[3], p[4], p[5]};
  }
  return t;
}

double bbox_diagonal(const Curve& a, const Curve& b) {
  const int d = a.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
  for (const Curve* c : {&a, &b})
    for (std::size_t i = 0; i < c->size(); ++i)
      for (int k = 0; k < d; ++k) {
        lo[k] = std::min(lo[k], c->vertex(i)[k]);
        hi[k] = std::max(hi[k], c->vertex(i)[k]);
      }
  double s = 0.0;
  for (int k = 0; k < d; ++k) s += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  return std::sqrt(s);
}

}  // namespace

Registration register_rigid(const Curve& moving, const Curve& target, const RegisterOptions& opt,
                            std::uint64_t seed) {
  const int d = moving.dim();
  if (d != target.dim()) fail_data("register: dimension mismatch");
  if (d != 2 && d != 3) fail_usage("register: only 2D and 3D curves are supported");

  // Rigid maps commute with arc-length resampling, so resample once.
  DistanceOptions inner = opt.distance;
  const Curve mv = inner.resample ? resample(moving, inner.resample) : moving;
  const Curve tg = inner.resample ? resample(target, inner.resample) : target;
  inner.resample = 0;
  const Point center = moving.centroid();

  const int n_angles = d == 2 ? 1 : 3;
  const int n_params = n_angles + d;
  auto objective = [&](const std::vector<double>& p) {
    return curve_distance(from_params(p, d, center).apply(mv), tg, inner);
  };

  Registration best;
  best.params.assign(n_params, 0.0);
  best.transform = RigidTransform::identity(d);
  best.transform.center = center;
  best.initial_distance = objective(best.params);
  best.distance = best.initial_distance;

  const double diag = bbox_diagonal(moving, target);
  const double tstep0 = opt.translation_frac * (diag > 0.0 ? diag : 1.0);
  const Point tc = target.centroid();

  const std::size_t restarts = std::max<std::size_t>(1, opt.restarts);
  std::vector<std::vector<double>> found(restarts);
  std::vector<double> value(restarts);
  parallel_for(restarts, [&](std::size_t r) {
    Rng rng(substream_seed(seed, r, StreamRole::restart));
    std::vector<double> p(n_params, 0.0);
    if (r > 0) {
      // Random orientation, translated so that the centroids coincide, then jittered.
      for (int a = 0; a < n_angles; ++a) p[a] = rng.uniform(-std::numbers::pi, std::numbers::pi);
      for (int k = 0; k < d; ++k) p[n_angles + k] = tc[k] - center[k] + tstep0 * (2.0 * rng.uniform() - 1.0);
    }
    double f = objective(p);
    double rstep = opt.rotation_step, tstep = tstep0;
    for (int h = 0; h <= opt.halvings;) {
      bool improved = false;
      for (int i = 0; i < n_params; ++i) {
        const double step = i < n_angles ? rstep : tstep;
        for (double sgn : {1.0, -1.0}) {
          std::vector<double> q = p;
          q[i] += sgn * step;
          const double g = objective(q);
          if (g < f) {
            f = g;
            p = std::move(q);
            improved = true;
            break;
          }
        }
      }
      if (!improved) {
        rstep *= 0.5;
        tstep *= 0.5;
        ++h;
      }
    }
    found[r] = std::move(p);
    value[r] = f;
  });

  for (std::size_t r = 0; r < restarts; ++r) {
    if (value[r] < best.distance) {
      best.distance = value[r];
      best.params = found[r];
    }
  }
  best.transform = from_params(best.params, d, center);
  return best;
}

}  // namespace curvedepth
