#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvedepth/curve.hpp"
#include "curvedepth/error.hpp"
#include "curvedepth/schemes.hpp"

using namespace curvedepth;

namespace {

Curve random_polyline(std::mt19937_64& g, std::size_t n, int d = 2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xy(n * d);
  for (auto& v : xy) v = u(g);
  return Curve("r", d, xy);
}

}  // namespace

TEST(Curve, LengthOfSegmentAndSquare) {
  EXPECT_DOUBLE_EQ(Curve("s", 2, {0, 0, 1, 0}).length(), 1.0);
  EXPECT_DOUBLE_EQ(Curve("sq", 2, {0, 0, 1, 0, 1, 1, 0, 1, 0, 0}).length(), 4.0);
}

TEST(Curve, FineCircleLengthApproachesPi) {
  EXPECT_NEAR(circle_curve(0.5, 10000).length(), std::numbers::pi, 1e-6);
}

TEST(Curve, TrivialCurves) {
  Curve single("p", 2, {1, 2});
  EXPECT_TRUE(single.trivial());
  Curve repeated("p", 2, {1, 2, 1, 2, 1, 2});
  EXPECT_TRUE(repeated.trivial());
  EXPECT_EQ(repeated.size(), 1u);
  const Point p = repeated.point_at(0.7);
  EXPECT_EQ(p, (Point{1, 2}));
}

TEST(Curve, CollapsesConsecutiveDuplicates) {
  Curve c("c", 2, {0, 0, 0, 0, 1, 0, 1, 0, 1, 1});
  EXPECT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c.length(), 2.0);
}

TEST(Curve, RejectsBadInput) {
  EXPECT_THROW(Curve("c", 2, {0, 0, 1}), Error);
  EXPECT_THROW(Curve("c", 2, {0, NAN}), Error);
  EXPECT_THROW(Curve("c", 0, {}), Error);
}

TEST(Curve, PointAt) {
  Curve seg("s", 2, {0, 0, 2, 0});
  EXPECT_EQ(seg.point_at(0.25), (Point{0.5, 0.0}));
  Curve corner("c", 2, {0, 0, 1, 0, 1, 1});
  EXPECT_EQ(corner.point_at(0.5), (Point{1.0, 0.0}));
  EXPECT_EQ(corner.point_at(0.0), (Point{0.0, 0.0}));
  EXPECT_EQ(corner.point_at(1.0), (Point{1.0, 1.0}));
}

TEST(Curve, SimilarityIdentityScaleRotation) {
  Curve seg("s", 2, {0, 0, 1, 0});
  const Curve same = apply_similarity(seg, Similarity::identity(2));
  EXPECT_EQ(same.coords(), seg.coords());

  Similarity f = Similarity::identity(2);
  f.scale = 2.0;
  EXPECT_DOUBLE_EQ(apply_similarity(seg, f).length(), 2.0);

  Similarity r = Similarity::identity(2);
  r.rotation = rotation_2d(std::numbers::pi / 2);
  const Curve rot = apply_similarity(seg, r);
  EXPECT_NEAR(rot.vertex(1)[0], 0.0, 1e-15);
  EXPECT_NEAR(rot.vertex(1)[1], 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(rot.length(), 1.0);
}

TEST(Curve, RejectsNonOrthogonalRotation) {
  Similarity f = Similarity::identity(2);
  f.rotation = {1.0, 0.1, 0.0, 1.0};
  EXPECT_THROW(apply_similarity(Curve("s", 2, {0, 0, 1, 0}), f), Error);
}

TEST(CurveProperty, LengthScalesBySimilarity) {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 2;
    const Curve c = random_polyline(g, 10, d);
    Similarity f = Similarity::identity(d);
    f.scale = u(g);
    f.rotation = d == 2 ? rotation_2d(u(g)) : rotation_3d(u(g), u(g), u(g));
    for (auto& t : f.translation) t = u(g);
    const double ratio = apply_similarity(c, f).length() / c.length();
    EXPECT_NEAR(ratio / f.scale, 1.0, 1e-12);
  }
}

TEST(CurveProperty, ArcLengthBetweenIsProportional) {
  std::mt19937_64 g(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const Curve c = random_polyline(g, 8, 2 + rep % 2);
    double t1 = u(g), t2 = u(g);
    if (t1 > t2) std::swap(t1, t2);
    EXPECT_NEAR(arc_length_between(c, t1, t2), (t2 - t1) * c.length(), 1e-10);
  }
}

TEST(CurveProperty, PointAtIsLipschitz) {
  std::mt19937_64 g(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const Curve c = random_polyline(g, 12);
    const double t = u(g), eps = 1e-3 * u(g);
    const Point a = c.point_at(t), b = c.point_at(std::min(1.0, t + eps));
    const double dist = std::hypot(a[0] - b[0], a[1] - b[1]);
    EXPECT_LE(dist, eps * c.length() + 1e-12);
  }
}

TEST(Curve, ResampleKeepsEndpointsAndSpacing) {
  Curve c("c", 2, {0, 0, 1, 0, 1, 3});
  const Curve r = resample(c, 5);
  EXPECT_EQ(r.size(), 5u);
  EXPECT_EQ(r.vertex(0)[0], 0.0);
  EXPECT_EQ(r.vertex(4)[1], 3.0);
  EXPECT_NEAR(r.length(), 4.0, 1e-12);
  EXPECT_THROW(resample(c, 1), Error);
}

TEST(Curve, ReversedAndCentroid) {
  Curve c("c", 2, {0, 0, 2, 0, 2, 2});
  const Curve r = c.reversed();
  EXPECT_EQ(r.vertex(0)[1], 2.0);
  EXPECT_DOUBLE_EQ(r.length(), c.length());
  const Point m = c.centroid();
  EXPECT_DOUBLE_EQ(m[0], 4.0 / 3.0);
}
