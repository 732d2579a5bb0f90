#include "curvedepth/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "curvedepth/error.hpp"

namespace curvedepth::oracle {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

double segments_line(std::size_t k, std::size_t n) {
  if (n == 0 || k == 0 || k > n) fail_usage("segments_line: need 1 <= k <= n");
  const double dn = static_cast<double>(n);
  if (k == 1 || k == n) return 1.0 / dn;
  const double t = static_cast<double>(k - 1) / (dn - 1.0);
  return 1.0 / dn - ((dn - 1.0) / dn) * ((1.0 - t) * std::log(1.0 - t) + t * std::log(t));
}

double parallel_segment(double y) {
  if (y < 0.0 || y > 1.0) fail_usage("parallel_segment: y must lie in [0, 1]");
  return std::min(y, 1.0 - y);
}

double star_tail(double h) {
  if (h < 0.0) return 1.0 - star_tail(-h);
  if (h == 0.0) return 0.5;
  if (h >= 1.0) return 0.0;
  return (std::acos(h) - h * std::log((1.0 + std::sqrt(1.0 - h * h)) / h)) / kPi;
}

double star_point(double t) {
  if (t <= 0.0) return 0.5;
  if (t >= 1.0) return 0.0;
  // Boundary at angle alpha to the segment: the side away from the origin
  // holds mass 1 - t of the segment, the side with the origin holds t.
  const double away = grid_golden_min([t](double a) { return star_tail(t * std::sin(a)) / (1.0 - t); }, 0.0,
                                      kPi / 2.0, 400);
  const double toward = grid_golden_min([t](double a) { return (1.0 - star_tail(t * std::sin(a))) / t; }, 0.0,
                                        kPi / 2.0, 400);
  return std::min({0.5, away, toward});
}

double star_population() {
  // composite Simpson; the integrand is bounded and has one kink
  const int n = 2000;
  const double h = 1.0 / n;
  double s = star_point(0.0) + star_point(1.0);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * star_point(i * h);
  return s * h / 3.0;
}

double circle_population(double r, std::size_t grid) {
  if (r <= 0.0) fail_usage("circle_population: radius must be positive");
  if (r >= 1.0) return 0.0;
  auto L = [](double s) { return std::log((1.0 + std::sqrt(1.0 - s * s)) / s); };
  // tangent line at the point, origin side
  const double a = std::acos(r) / kPi - (r / kPi) * L(r);
  auto inner = [&](double al) {
    const double s = r * std::sin(al);
    return (2.0 * kPi - 2.0 * std::acos(s) + 2.0 * s * L(s)) / (kPi + 2.0 * al);
  };
  auto outer = [&](double al) {
    const double s = r * std::sin(al);
    return (2.0 * std::acos(s) - 2.0 * s * L(s)) / (kPi - 2.0 * al);
  };
  const double b = grid_golden_min(inner, 0.0, kPi / 2.0, grid);
  const double c = grid_golden_min(outer, 0.0, kPi / 2.0, grid);
  return std::min({1.0, 1.0 - a, b, c});
}

double circle_sample(double r, std::span<const double> radii, std::size_t grid) {
  if (radii.empty()) fail_usage("circle_sample: no radii");
  if (r <= 0.0) fail_usage("circle_sample: radius must be positive");
  const double rmax = *std::max_element(radii.begin(), radii.end());
  if (r >= rmax) return 0.0;
  const double n = static_cast<double>(radii.size());
  // Fraction of circle R beyond a line at distance s from the centre.
  auto beyond = [](double s, double R) { return R > s ? std::acos(s / R) / kPi : 0.0; };
  auto away = [&](double al) {
    const double s = r * std::sin(al);
    double q = 0.0;
    for (double R : radii) q += beyond(s, R);
    return 2.0 * kPi * q / (n * (kPi - 2.0 * al));
  };
  auto toward = [&](double al) {
    const double s = r * std::sin(al);
    double q = 0.0;
    for (double R : radii) q += 1.0 - beyond(s, R);
    return 2.0 * kPi * q / (n * (kPi + 2.0 * al));
  };
  const double b = grid_golden_min(away, 0.0, kPi / 2.0, grid);
  const double c = std::min(grid_golden_min(toward, 0.0, kPi / 2.0, grid), toward(kPi / 2.0));
  return std::min({1.0, b, c});
}

namespace {

struct MinRatio {
  double m, nq, delta;
  double best = kInf;
  void add(std::size_t mu, std::size_t q) {
    if (q == 0) {
      best = 0.0;
    } else if (static_cast<double>(mu) > delta * m) {
      best = std::min(best, (static_cast<double>(q) * m) / (static_cast<double>(mu) * nq));
    }
  }
};

struct Tagged {
  std::array<double, 3> v;
  bool is_mu;
};

double bruteforce_2d(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta) {
  std::size_t mu0 = 0, q0 = 0;
  std::vector<Tagged> pts;
  for (const PointCloud* c : {&mu, &q})
    for (std::size_t i = 0; i < c->size(); ++i) {
      const double dx = c->at(i, 0) - x[0], dy = c->at(i, 1) - x[1];
      if (dx == 0.0 && dy == 0.0) {
        (c == &mu ? mu0 : q0)++;
      } else {
        pts.push_back({{dx, dy, 0.0}, c == &mu});
      }
    }
  MinRatio r{static_cast<double>(mu.size()), static_cast<double>(q.size()), delta};
  auto count = [&](double ux, double uy) {
    std::size_t cm = mu0, cq = q0;
    for (const auto& p : pts)
      if (p.v[0] * ux + p.v[1] * uy >= 0.0) (p.is_mu ? cm : cq)++;
    r.add(cm, cq);
  };
  if (pts.empty()) {
    r.add(mu0, q0);
    return r.best;
  }
  // Closed halfplanes whose boundary passes through a data point.
  for (const auto& p : pts) {
    count(-p.v[1], p.v[0]);
    count(p.v[1], -p.v[0]);
  }
  // Open arcs between consecutive critical angles.
  std::vector<double> crit;
  for (const auto& p : pts) {
    const double phi = std::atan2(p.v[1], p.v[0]);
    for (double c : {phi + kPi / 2.0, phi - kPi / 2.0}) {
      if (c > kPi) c -= 2.0 * kPi;
      if (c <= -kPi) c += 2.0 * kPi;
      crit.push_back(c);
    }
  }
  std::sort(crit.begin(), crit.end());
  std::vector<std::pair<double, double>> clusters;  // [first, last] of nearly equal angles
  for (double c : crit) {
    if (!clusters.empty() && c - clusters.back().second < 1e-12) {
      clusters.back().second = c;
    } else {
      clusters.push_back({c, c});
    }
  }
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const double a = clusters[i].second;
    const double b = i + 1 < clusters.size() ? clusters[i + 1].first : clusters[0].first + 2.0 * kPi;
    if (b - a < 1e-12) continue;
    const double mid = 0.5 * (a + b);
    count(std::cos(mid), std::sin(mid));
  }
  return r.best;
}

double bruteforce_3d(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta,
                     std::size_t random_dirs, std::uint64_t seed) {
  std::size_t mu0 = 0, q0 = 0;
  std::vector<Tagged> pts;
  for (const PointCloud* c : {&mu, &q})
    for (std::size_t i = 0; i < c->size(); ++i) {
      const std::array<double, 3> v{c->at(i, 0) - x[0], c->at(i, 1) - x[1], c->at(i, 2) - x[2]};
      if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) {
        (c == &mu ? mu0 : q0)++;
      } else {
        pts.push_back({v, c == &mu});
      }
    }
  MinRatio r{static_cast<double>(mu.size()), static_cast<double>(q.size()), delta};
  auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  auto count = [&](const std::array<double, 3>& u, std::size_t fi, std::size_t fj) {
    std::size_t cm = mu0, cq = q0;
    for (std::size_t k = 0; k < pts.size(); ++k)
      if (k == fi || k == fj || dot(pts[k].v, u) >= 0.0) (pts[k].is_mu ? cm : cq)++;
    r.add(cm, cq);
  };
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto& a = pts[i].v;
      const auto& b = pts[j].v;
      const std::array<double, 3> n{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
      if (n[0] == 0.0 && n[1] == 0.0 && n[2] == 0.0) continue;
      count(n, i, j);
      count({-n[0], -n[1], -n[2]}, i, j);
    }
  Rng rng(seed);
  for (std::size_t k = 0; k < random_dirs; ++k) {
    const std::array<double, 3> u{rng.normal(), rng.normal(), rng.normal()};
    count(u, none, none);
  }
  if (pts.empty()) r.add(mu0, q0);
  return r.best;
}

}  // namespace

double point_depth_bruteforce(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta,
                              std::size_t random_dirs, std::uint64_t seed) {
  if (mu.empty() || q.empty()) fail_usage("bruteforce depth: empty sample");
  if (x.size() == 2) return bruteforce_2d(x, mu, q, delta);
  if (x.size() == 3) return bruteforce_3d(x, mu, q, delta, random_dirs, seed);
  fail_usage("bruteforce depth: only 2D and 3D are supported");
}

double distance_dp(const Curve& a, const Curve& b) {
  if (a.dim() != b.dim()) fail_data("distance oracle: dimension mismatch");
  const std::size_t n1 = a.size(), n2 = b.size();
  auto d = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (int k = 0; k < a.dim(); ++k) {
      const double t = b.vertex(j)[k] - a.vertex(i)[k];
      s = s + t * t;
    }
    return std::sqrt(s);
  };
  std::vector<double> F(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) {
      double prev;
      if (i == 0 && j == 0) {
        prev = 0.0;
      } else {
        prev = kInf;
        if (i > 0) prev = std::min(prev, F[(i - 1) * n2 + j]);
        if (j > 0) prev = std::min(prev, F[i * n2 + j - 1]);
        if (i > 0 && j > 0) prev = std::min(prev, F[(i - 1) * n2 + j - 1]);
      }
      F[i * n2 + j] = std::max(d(i, j), prev);
    }
  return F.back();
}

}  // namespace curvedepth::oracle
