#include "curvedepth/schemes.hpp"

#include <cmath>
#include <numbers>

#include "curvedepth/error.hpp"
#include "curvedepth/sampling.hpp"

namespace curvedepth {

namespace {

constexpr double kPi = std::numbers::pi;

std::string label(const std::string& prefix, std::size_t i) { return prefix + "-" + std::to_string(i); }

template <class F>
Curve graph_curve(std::string id, double lo, double hi, std::size_t count, F&& f) {
  std::vector<double> xy;
  xy.reserve(2 * count);
  for (std::size_t j = 0; j < count; ++j) {
    const double x = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(count - 1);
    xy.push_back(x);
    xy.push_back(f(x, j));
  }
  return Curve(std::move(id), 2, std::move(xy));
}

double claeskens_y(double a1, double a2, double x) { return a1 * std::sin(2 * kPi * x) + a2 * std::cos(2 * kPi * x); }

double cuevas_shape(double w, double x) { return 30.0 * std::pow(1.0 - x, 1.0 + w) * std::pow(x, 1.5 - w); }

// Stationary Gaussian process with covariance 0.2 exp(-|t|/0.3) on a uniform
// grid, via its exact AR(1) recursion.
std::vector<double> exp_cov_process(Rng& rng, std::size_t count, double step) {
  const double var = 0.2;
  const double rho = std::exp(-step / 0.3);
  const double innov = std::sqrt(var * (1.0 - rho * rho));
  std::vector<double> u(count);
  u[0] = std::sqrt(var) * rng.normal();
  for (std::size_t j = 1; j < count; ++j) u[j] = rho * u[j - 1] + innov * rng.normal();
  return u;
}

Curve claeskens_draw(Rng& rng, std::string id, std::size_t vertices) {
  const double a1 = rng.uniform(0.0, 0.05), a2 = rng.uniform(0.0, 0.05);
  const double lo = rng.uniform(0.0, 2 * kPi / 3), hi = rng.uniform(4 * kPi / 3, 2 * kPi);
  return graph_curve(std::move(id), lo, hi, vertices, [&](double x, std::size_t) { return claeskens_y(a1, a2, x); });
}

Curve cuevas_draw(Rng& rng, std::string id, std::size_t vertices) {
  const double w = rng.uniform(0.0, 0.5);
  const double lo = rng.uniform(0.0, 0.1), hi = rng.uniform(0.9, 1.0);
  const auto u = exp_cov_process(rng, vertices, (hi - lo) / static_cast<double>(vertices - 1));
  return graph_curve(std::move(id), lo, hi, vertices, [&](double x, std::size_t j) { return cuevas_shape(w, x) + u[j]; });
}

void s_point(double t, double& x1, double& x2) {
  if (t < 1.5 * kPi) {
    x1 = -(std::cos(t) + 1.0) + 1.0;
    x2 = std::sin(t) + 1.0;
  } else {
    x1 = -(std::cos(3 * t - 3 * kPi) + 1.0) + 1.0;
    x2 = -(std::sin(3 * t - 3 * kPi) + 1.0);
  }
}

// Triangular bump of height h centred at c with half-width w.
double bump(double x, double c, double w, double h) {
  const double d = std::abs(x - c);
  return d < w ? h * (1.0 - d / w) : 0.0;
}

}  // namespace

const std::vector<std::string>& scheme_names() {
  static const std::vector<std::string> names = {"segments-line", "parallel-segments", "star",     "circles",
                                                 "claeskens",     "cuevas",            "outlierA", "outlierB",
                                                 "s-letters"};
  return names;
}

Curve circle_curve(double r, std::size_t vertices, std::string id) {
  if (vertices < 3) fail_usage("circle needs at least 3 vertices");
  std::vector<double> xy;
  xy.reserve(2 * (vertices + 1));
  for (std::size_t j = 0; j <= vertices; ++j) {
    const double a = 2 * kPi * static_cast<double>(j % vertices) / static_cast<double>(vertices);
    xy.push_back(r * std::cos(a));
    xy.push_back(r * std::sin(a));
  }
  return Curve(std::move(id), 2, std::move(xy));
}

Curve star_segment(double theta, std::string id) {
  return Curve(std::move(id), 2, {0.0, 0.0, std::cos(theta), std::sin(theta)});
}

Curve parallel_segment_curve(double y, std::string id) { return Curve(std::move(id), 2, {0.0, y, 1.0, y}); }

Curve claeskens_mean(MeanRange range, std::size_t vertices) {
  const double lo = range == MeanRange::central ? kPi / 3 : 0.0;
  const double hi = range == MeanRange::central ? 5 * kPi / 3 : 2 * kPi;
  return graph_curve("mean", lo, hi, vertices, [](double x, std::size_t) { return claeskens_y(0.025, 0.025, x); });
}

Curve cuevas_mean(std::size_t vertices) {
  return graph_curve("mean", 0.0, 1.0, vertices, [](double t, std::size_t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    return 15.0 * (1.0 - t) * t * (std::sqrt(1.0 - t) - std::sqrt(t)) / (std::log(1.0 - t) - std::log(t));
  });
}

Curve s_letter(double t0, double t1, std::size_t vertices) {
  std::vector<double> xy;
  xy.reserve(2 * vertices);
  for (std::size_t j = 0; j < vertices; ++j) {
    const double t = t0 + (t1 - t0) * static_cast<double>(j) / static_cast<double>(vertices - 1);
    double a, b;
    s_point(t, a, b);
    xy.push_back(a);
    xy.push_back(b);
  }
  return Curve("s-letter", 2, std::move(xy));
}

std::vector<Curve> generate(const SchemeSpec& spec, std::uint64_t seed) {
  if (spec.n == 0) fail_usage("simulate: n must be >= 1");
  const std::string& s = spec.name;
  const std::uint64_t base = substream_seed(seed, id_key(s), StreamRole::generator);
  auto rng_for = [base](std::size_t i) { return Rng(mix_seed(base, i)); };
  std::vector<Curve> out;
  out.reserve(spec.n + 4);
  const std::size_t n = spec.n;

  if (s == "segments-line") {
    // unit segments with unit gaps on the x axis
    for (std::size_t i = 0; i < n; ++i) {
      const double x0 = 2.0 * static_cast<double>(i);
      out.emplace_back(label("segment", i), 2, std::vector<double>{x0, 0.0, x0 + 1.0, 0.0});
    }
  } else if (s == "parallel-segments") {
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng_for(i);
      out.push_back(parallel_segment_curve(r.uniform(), label("segment", i)));
    }
  } else if (s == "star") {
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng_for(i);
      out.push_back(star_segment(r.uniform(0.0, 2 * kPi), label("star", i)));
    }
  } else if (s == "circles") {
    const std::size_t v = spec.vertices ? spec.vertices : 256;
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng_for(i);
      out.push_back(circle_curve(r.uniform(), v, label("circle", i)));
    }
  } else if (s == "claeskens") {
    const std::size_t v = spec.vertices ? spec.vertices : 500;
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng_for(i);
      out.push_back(claeskens_draw(r, label("curve", i), v));
    }
    if (spec.with_mean) out.push_back(claeskens_mean(MeanRange::central, v));
  } else if (s == "cuevas") {
    const std::size_t v = spec.vertices ? spec.vertices : 200;
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng_for(i);
      out.push_back(cuevas_draw(r, label("curve", i), v));
    }
    if (spec.with_mean) out.push_back(cuevas_mean(v));
  } else if (s == "outlierA") {
    const std::size_t v = spec.vertices ? spec.vertices : 500;
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng_for(i);
      out.push_back(claeskens_draw(r, label("curve", i), v));
    }
    Rng r = rng_for(n);
    auto range = [&r](double& lo, double& hi) {
      lo = r.uniform(0.0, 2 * kPi / 3);
      hi = r.uniform(4 * kPi / 3, 2 * kPi);
    };
    double lo, hi;
    // shifted up, with a slower oscillation
    range(lo, hi);
    out.push_back(graph_curve("outlier-shift-up", lo, hi, v,
                              [](double x, std::size_t) { return 0.12 + 0.03 * std::sin(1.5 * kPi * x); }));
    // shifted down, with a faster oscillation
    range(lo, hi);
    out.push_back(graph_curve("outlier-shift-down", lo, hi, v,
                              [](double x, std::size_t) { return -0.12 + 0.03 * std::cos(3.0 * kPi * x); }));
    // inside the band but twice the frequency: as a trace, a phase change
    // alone would just overlap the other curves
    range(lo, hi);
    out.push_back(graph_curve("outlier-shape", lo, hi, v,
                              [](double x, std::size_t) { return claeskens_y(0.025, 0.025, 2.0 * x); }));
  } else if (s == "outlierB") {
    const std::size_t v = spec.vertices ? spec.vertices : 200;
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng_for(i);
      out.push_back(cuevas_draw(r, label("curve", i), v));
    }
    Rng r = rng_for(n);
    auto noisy = [&](std::string id, double w, auto&& extra) {
      const double lo = r.uniform(0.0, 0.1), hi = r.uniform(0.9, 1.0);
      const auto u = exp_cov_process(r, v, (hi - lo) / static_cast<double>(v - 1));
      return graph_curve(std::move(id), lo, hi, v,
                         [&](double x, std::size_t j) { return cuevas_shape(w, x) + u[j] + extra(x); });
    };
    out.push_back(noisy("outlier-shift", 0.4, [](double) { return 3.0; }));
    out.push_back(noisy("outlier-isolated", 0.1, [](double x) { return bump(x, 0.3, 0.02, 8.0); }));
    out.push_back(noisy("outlier-persistent", 0.25, [](double x) { return 1.5 * std::sin(24.0 * kPi * x); }));
    out.push_back(noisy("outlier-negative-peak", 0.2, [](double x) { return bump(x, 0.65, 0.02, -8.0); }));
  } else if (s == "s-letters") {
    const std::size_t v = spec.vertices ? spec.vertices : 200;
    for (std::size_t i = 0; i < n; ++i) {
      Rng r = rng_for(i);
      const double t0 = std::abs(r.normal()) * spec.sigma_trim;
      const double t1 = 2 * kPi - std::abs(r.normal()) * spec.sigma_trim;
      const double angle = r.normal() * spec.sigma_angle;
      const double dx = r.normal() * spec.sigma_shift, dy = r.normal() * spec.sigma_shift;
      Similarity f = Similarity::identity(2);
      f.rotation = rotation_2d(angle);
      f.translation = {dx, dy};
      out.push_back(apply_similarity(s_letter(t0, t1, v), f).with_id(label("s", i)));
    }
    if (spec.with_mean) out.push_back(s_letter(0.0, 2 * kPi, v).with_id("mean"));
  } else {
    fail_usage("unknown scheme '" + s + "'");
  }
  return out;
}

}  // namespace curvedepth
