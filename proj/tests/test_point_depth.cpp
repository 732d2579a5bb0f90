#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curvedepth/error.hpp"
#include "curvedepth/oracles.hpp"
#include "curvedepth/point_depth.hpp"
#include "curvedepth/simd.hpp"

using namespace curvedepth;

namespace {

PointCloud cloud(int d, std::initializer_list<double> xs) {
  const std::size_t n = xs.size() / d;
  PointCloud c(d, n);
  auto it = xs.begin();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> p(it, it + d);
    c.set(i, p);
    it += d;
  }
  return c;
}

PointCloud random_cloud(std::mt19937_64& g, int d, std::size_t n, double lo = -1, double hi = 1) {
  std::uniform_real_distribution<double> u(lo, hi);
  PointCloud c(d, n);
  std::vector<double> p(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& v : p) v = u(g);
    c.set(i, p);
  }
  return c;
}

}  // namespace

TEST(PointDepth, CrossExampleMatchesOracle) {
  const auto q = cloud(2, {1, 0, -1, 0, 0, 1, 0, -1});
  const auto mu = cloud(2, {0.1, 0, -0.1, 0, 0, 0.1, 0, -0.1});
  const double x[] = {0.0, 0.0};
  const double exact = point_depth_exact_2d(x, mu, q, 0.2);
  EXPECT_EQ(exact, oracle::point_depth_bruteforce(x, mu, q, 0.2));
  // a closed halfplane through two opposite points holds 3 of 4 of each
  EXPECT_EQ(exact, 1.0);
}

TEST(PointDepth, OutsideHullIsZero) {
  const auto q = cloud(2, {0, 0, 1, 0, 0, 1});
  const auto mu = cloud(2, {0.2, 0.2, 0.3, 0.3});
  const double x[] = {2.0, 2.0};
  EXPECT_EQ(point_depth_exact_2d(x, mu, q, 0.1), 0.0);
  const auto q3 = cloud(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1});
  const double x3[] = {1.0, 1.0, 1.0};
  EXPECT_EQ(point_depth_exact_3d(x3, q3, q3, 0.1), 0.0);
}

TEST(PointDepth, SameSampleBoundedByOne) {
  std::mt19937_64 g(3);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = random_cloud(g, 2, 30);
    const double x[] = {pts.at(0, 0), pts.at(0, 1)};
    EXPECT_LE(point_depth_exact_2d(x, pts, pts, 1.0 / 31.0), 1.0);
  }
}

TEST(PointDepth, OneDimensional) {
  const auto q = cloud(1, {-1, 1, 2});
  const auto mu = cloud(1, {0});
  // Dirac mu: every halfline through 0 holds mu entirely, depth = Tukey depth
  EXPECT_DOUBLE_EQ(point_depth_1d(0.0, mu, q, 0.1), 1.0 / 3.0);
  EXPECT_EQ(point_depth_1d(-5.0, cloud(1, {-5}), q, 0.1), 0.0);
  const auto sym = cloud(1, {-2, -1, 1, 2});
  EXPECT_DOUBLE_EQ(point_depth_1d(0.0, sym, sym, 0.1), 1.0);
}

TEST(PointDepth, ConventionZeroOverZero) {
  // Q sits at x only; mu elsewhere. The halfplane away from mu has 0/0 mass
  // ratio only if Q misses it, which it cannot: Q at x is in every halfplane.
  const auto q = cloud(2, {0, 0});
  const auto mu = cloud(2, {1, 0, 2, 0});
  const double x[] = {0.0, 0.0};
  const double v = point_depth_exact_2d(x, mu, q, 0.1);
  EXPECT_EQ(v, oracle::point_depth_bruteforce(x, mu, q, 0.1));
  EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(PointDepth, RejectsBadInput) {
  const auto q = cloud(2, {0, 0});
  const double x[] = {0.0, 0.0};
  EXPECT_THROW(point_depth_exact_2d(x, PointCloud(2, 0), q, 0.1), Error);
  EXPECT_THROW(point_depth_exact_2d(x, q, q, 0.5), Error);
  EXPECT_THROW(point_depth_exact_2d(x, q, q, 0.0), Error);
}

TEST(PointDepth, DefaultDelta) {
  EXPECT_DOUBLE_EQ(default_delta(1), 0.1);
  EXPECT_NEAR(default_delta(500), 1.0 / (10.0 * std::pow(500.0, 0.125)), 1e-15);
  DepthConfig cfg;
  EXPECT_DOUBLE_EQ(cfg.resolved_delta(256), 0.05);
}

TEST(PointDepthProperty, Exact2dEqualsOracle) {
  std::mt19937_64 g(2024);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t m = 1 + g() % 20, n = 1 + g() % 40;
    const auto mu = random_cloud(g, 2, m);
    const auto q = random_cloud(g, 2, n);
    std::uniform_real_distribution<double> u(-0.8, 0.8);
    const double x[] = {u(g), u(g)};
    const double delta = 0.01 + 0.4 * (g() % 100) / 100.0;
    EXPECT_EQ(point_depth_exact_2d(x, mu, q, delta), oracle::point_depth_bruteforce(x, mu, q, delta)) << rep;
  }
}

TEST(PointDepthProperty, Exact2dEqualsOracleOnLattice) {
  // integer lattice: many collinear triples and coincidences with x
  std::mt19937_64 g(77);
  for (int rep = 0; rep < 200; ++rep) {
    auto lattice = [&](std::size_t n) {
      PointCloud c(2, n);
      for (std::size_t i = 0; i < n; ++i) {
        const double p[] = {double(int(g() % 5) - 2), double(int(g() % 5) - 2)};
        c.set(i, p);
      }
      return c;
    };
    const auto mu = lattice(1 + g() % 12);
    const auto q = lattice(1 + g() % 30);
    const double x[] = {double(int(g() % 3) - 1), double(int(g() % 3) - 1)};
    EXPECT_EQ(point_depth_exact_2d(x, mu, q, 0.05), oracle::point_depth_bruteforce(x, mu, q, 0.05)) << rep;
  }
}

TEST(PointDepthProperty, ScalarAndVectorKernelsAgree) {
  std::mt19937_64 g(5);
  for (int rep = 0; rep < 50; ++rep) {
    const auto mu = random_cloud(g, 2, 40);
    const auto q = random_cloud(g, 2, 300);
    const double x[] = {0.1, -0.2};
    simd::force_isa(simd::Isa::scalar);
    const double a = point_depth_exact_2d(x, mu, q, 0.05);
    simd::reset_isa();
    const double b = point_depth_exact_2d(x, mu, q, 0.05);
    EXPECT_EQ(a, b);
  }
}

TEST(PointDepthProperty, Exact3dFlatMatches2d) {
  std::mt19937_64 g(9);
  for (int rep = 0; rep < 40; ++rep) {
    const auto mu2 = random_cloud(g, 2, 12);
    const auto q2 = random_cloud(g, 2, 25);
    auto lift = [](const PointCloud& c) {
      PointCloud out(3, c.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double p[] = {c.at(i, 0), c.at(i, 1), 0.0};
        out.set(i, p);
      }
      return out;
    };
    const double x2[] = {0.05, -0.1};
    const double x3[] = {0.05, -0.1, 0.0};
    EXPECT_NEAR(point_depth_exact_3d(x3, lift(mu2), lift(q2), 0.1), point_depth_exact_2d(x2, mu2, q2, 0.1), 1e-12);
  }
}

TEST(PointDepthProperty, Exact3dDominatedByRandomAndOracle) {
  std::mt19937_64 g(10);
  for (int rep = 0; rep < 30; ++rep) {
    const auto mu = random_cloud(g, 3, 10);
    const auto q = random_cloud(g, 3, 20);
    const double x[] = {0.1, 0.0, -0.1};
    const double exact = point_depth_exact_3d(x, mu, q, 0.1);
    for (std::size_t k : {1u, 10u, 1000u}) {
      Rng rng(rep * 31 + k);
      EXPECT_LE(exact, point_depth_random(x, mu, q, 0.1, k, rng));
    }
    EXPECT_LE(exact, oracle::point_depth_bruteforce(x, mu, q, 0.1, 2000, rep));
  }
}

TEST(PointDepthProperty, RandomDominatesExactAndConverges) {
  std::mt19937_64 g(11);
  const auto mu = random_cloud(g, 2, 30);
  const auto q = random_cloud(g, 2, 200);
  const double x[] = {0.0, 0.1};
  const double exact = point_depth_exact_2d(x, mu, q, 0.1);
  double prev = INFINITY;
  // nested direction sets: the first k draws of one stream
  for (std::size_t k : {10u, 100u, 1000u, 10000u}) {
    Rng rng(123);
    const double v = point_depth_random(x, mu, q, 0.1, k, rng);
    EXPECT_GE(v, exact);
    EXPECT_LE(v, prev);
    prev = v;
  }
  EXPECT_NEAR(prev, exact, 0.05);
}

TEST(PointDepthProperty, RandomSingleDirection) {
  const auto q = cloud(2, {1, 0, -1, 0, 0, 1, 0, -1, 0.5, 0.5});
  const auto mu = cloud(2, {0.1, 0.1, -0.1, -0.1});
  const double x[] = {0.0, 0.0};
  Rng a(99);
  const double v = point_depth_random(x, mu, q, 0.1, 1, a);
  // replay the draw and count by hand
  Rng b(99);
  double u0 = b.normal(), u1 = b.normal();
  std::size_t cm = 0, cq = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) cm += mu.at(i, 0) * u0 + mu.at(i, 1) * u1 >= 0;
  for (std::size_t i = 0; i < q.size(); ++i) cq += q.at(i, 0) * u0 + q.at(i, 1) * u1 >= 0;
  if (cq == 0) {
    EXPECT_EQ(v, 0.0);
  } else if (double(cm) > 0.1 * 2) {
    EXPECT_DOUBLE_EQ(v, (double(cq) * 2) / (double(cm) * 5));
  } else {
    EXPECT_TRUE(std::isinf(v));
  }
}

TEST(PointDepthProperty, SimilarityInvariance) {
  std::mt19937_64 g(12);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int rep = 0; rep < 40; ++rep) {
    const int d = 2 + rep % 2;
    const auto mu = random_cloud(g, d, 15);
    const auto q = random_cloud(g, d, 40);
    std::vector<double> x(d, 0.05);
    Similarity f = Similarity::identity(d);
    f.scale = std::exp(u(g) / 2);
    f.rotation = d == 2 ? rotation_2d(u(g)) : rotation_3d(u(g), u(g), u(g));
    for (auto& t : f.translation) t = u(g);
    auto map = [&](const PointCloud& c) {
      PointCloud out(d, c.size());
      std::vector<double> p(d);
      for (std::size_t i = 0; i < c.size(); ++i) {
        f.apply(c.point(i), p);
        out.set(i, p);
      }
      return out;
    };
    std::vector<double> fx(d);
    f.apply(x, fx);
    DepthConfig cfg;
    cfg.delta = 0.1;
    Rng r1(1), r2(1);
    EXPECT_NEAR(point_depth(x, mu, q, cfg, r1), point_depth(fx, map(mu), map(q), cfg, r2), 1e-12);
  }
}

TEST(PointDepthProperty, BoundsFromThreshold) {
  std::mt19937_64 g(13);
  for (int rep = 0; rep < 30; ++rep) {
    const auto pts = random_cloud(g, 2, 20);
    const auto q = random_cloud(g, 2, 100);
    const double x[] = {pts.at(0, 0), pts.at(0, 1)};
    (void)q;
    const double v = point_depth_exact_2d(x, pts, pts, 0.2);
    EXPECT_LE(v, 1.0 / (1.0 - 0.2));
  }
}

TEST(PointDepthProperty, ZeroIffEmptyHalfplane) {
  std::mt19937_64 g(14);
  for (int rep = 0; rep < 100; ++rep) {
    const auto mu = random_cloud(g, 2, 10);
    const auto q = random_cloud(g, 2, 8);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const double x[] = {u(g), u(g)};
    // x outside the hull of q <=> some closed halfplane through x misses q
    bool empty = false;
    for (int a = 0; a < 20000 && !empty; ++a) {
      const double t = a * 2 * M_PI / 20000;
      bool hit = false;
      for (std::size_t i = 0; i < q.size() && !hit; ++i)
        hit = (q.at(i, 0) - x[0]) * std::cos(t) + (q.at(i, 1) - x[1]) * std::sin(t) >= 0;
      empty = !hit;
    }
    const double v = point_depth_exact_2d(x, mu, q, 0.05);
    if (empty) {
      EXPECT_EQ(v, 0.0);
    }
    if (v == 0.0) {
      EXPECT_TRUE(empty || oracle::point_depth_bruteforce(x, mu, q, 0.05) == 0.0);
    }
  }
}
