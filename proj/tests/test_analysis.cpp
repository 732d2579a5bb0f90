#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curvedepth/analysis.hpp"
#include "curvedepth/error.hpp"
#include "curvedepth/schemes.hpp"

using namespace curvedepth;

namespace {

std::vector<Curve> sample(const std::string& scheme, std::size_t n, std::uint64_t seed, std::size_t v = 0) {
  SchemeSpec s;
  s.name = scheme;
  s.n = n;
  s.vertices = v;
  return generate(s, seed);
}

std::vector<Curve> shifted(const std::vector<Curve>& cs, double dx, const std::string& tag) {
  std::vector<Curve> out;
  Similarity f = Similarity::identity(cs.front().dim());
  f.translation[0] = dx;
  for (const auto& c : cs) out.push_back(apply_similarity(c, f).with_id(tag + c.id()));
  return out;
}

}  // namespace

TEST(DDPlot, SameSampleSitsOnDiagonal) {
  const auto s = sample("circles", 15, 1, 64);
  const auto pts = dd_plot(s, s, 40, DepthConfig{}, 2);
  ASSERT_EQ(pts.size(), 30u);
  for (const auto& p : pts) EXPECT_EQ(p.d0, p.d1);
}

TEST(DDPlot, FarSampleGivesLShape) {
  const auto s0 = sample("circles", 10, 1, 64);
  const auto s1 = shifted(s0, 50.0, "far-");
  const auto pts = dd_plot(s0, s1, 30, DepthConfig{}, 3);
  for (const auto& p : pts) {
    EXPECT_TRUE(p.label != 0 || p.d1 == 0.0);
    EXPECT_TRUE(p.label != 1 || p.d0 == 0.0);
  }
}

TEST(DDPlot, SwappingSamplesSwapsCoordinates) {
  const auto s0 = sample("circles", 8, 4, 64);
  const auto s1 = shifted(sample("circles", 8, 5, 64), 0.3, "s-");
  const auto a = dd_plot(s0, s1, 30, DepthConfig{}, 6);
  const auto b = dd_plot(s1, s0, 30, DepthConfig{}, 6);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(a[i].d0, b[8 + i].d1);
    EXPECT_EQ(a[i].d1, b[8 + i].d0);
    EXPECT_EQ(a[8 + i].d0, b[i].d1);
  }
}

TEST(DDPlot, SeparatedClassesAreClassified) {
  // The largest circle of each sample has depth 0 in both samples, so the
  // two (0, 0) points collide and one error is unavoidable.
  const auto s0 = sample("circles", 12, 7, 64);
  const auto s1 = shifted(sample("circles", 12, 8, 64), 3.0, "s-");
  const auto pts = dd_plot(s0, s1, 40, DepthConfig{}, 9);
  const auto rule = dd_linear_classifier(pts);
  EXPECT_LE(rule.errors, 1u);
  std::size_t err = 0;
  for (const auto& p : pts) err += rule.predict(p.d0, p.d1) != p.label;
  EXPECT_EQ(err, rule.errors);
}

TEST(DDClassifier, DegenerateAndRandomLabels) {
  std::vector<DDPoint> same;
  for (int i = 0; i < 7; ++i) same.push_back({"p", i < 5 ? 1 : 0, 0.3, 0.3});
  const auto r = dd_linear_classifier(same);
  EXPECT_EQ(r.errors, 2u);
  EXPECT_EQ(r.predict(0.3, 0.3), 1);

  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<DDPoint> rnd;
  for (int i = 0; i < 20; ++i) rnd.push_back({"r", int(g() % 2), u(g), u(g)});
  EXPECT_LE(dd_linear_classifier(rnd).errors, 10u);
}

TEST(DDClassifier, ErrorCountMatchesPredictions) {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<DDPoint> pts;
    for (int i = 0; i < 15; ++i) {
      const int lab = int(g() % 2);
      pts.push_back({"r", lab, u(g) + 0.3 * lab, u(g)});
    }
    const auto rule = dd_linear_classifier(pts);
    std::size_t err = 0;
    for (const auto& p : pts) err += rule.predict(p.d0, p.d1) != p.label;
    EXPECT_EQ(err, rule.errors);
  }
}

TEST(Wilcoxon, RankSumByHand) {
  const std::vector<double> a = {1, 2, 3}, b = {4, 5};
  const auto r = wilcoxon_rank_sum(a, b);
  EXPECT_EQ(r.w, 6.0);
  // mean 9, variance 3*2*6/12 = 3
  EXPECT_NEAR(r.z, -3.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r.p, std::erfc(std::sqrt(3.0) / std::sqrt(2.0)), 1e-15);
}

TEST(Wilcoxon, TiesUseMidranksAndCorrectedVariance) {
  const std::vector<double> a = {1, 2, 2}, b = {2, 3};
  const auto r = wilcoxon_rank_sum(a, b);
  // ranks: 1 -> 1, the three 2s -> 3, 3 -> 5
  EXPECT_EQ(r.w, 7.0);
  const double var = 3.0 * 2.0 / 12.0 * (6.0 - 24.0 / 20.0);
  EXPECT_NEAR(r.z, (7.0 - 9.0) / std::sqrt(var), 1e-14);
}

TEST(Wilcoxon, RelabellingNegatesZ) {
  const std::vector<double> a = {0.1, 0.5, 0.3, 0.9}, b = {0.2, 0.7, 0.8};
  const auto r1 = wilcoxon_rank_sum(a, b);
  const auto r2 = wilcoxon_rank_sum(b, a);
  EXPECT_NEAR(r1.z, -r2.z, 1e-14);
  EXPECT_NEAR(r1.p, r2.p, 1e-15);
  EXPECT_GE(r1.p, 0.0);
  EXPECT_LE(r1.p, 1.0);
}

TEST(Wilcoxon, AllTiedGivesPOne) {
  const std::vector<double> a = {1, 1}, b = {1, 1, 1};
  EXPECT_EQ(wilcoxon_rank_sum(a, b).p, 1.0);
  EXPECT_THROW(wilcoxon_rank_sum(a, std::vector<double>{}), Error);
}

TEST(Wilcoxon, IdenticalGroupsGivePOne) {
  const auto ref = sample("circles", 15, 1, 64);
  const auto s = sample("circles", 10, 2, 64);
  const auto r = wilcoxon_depth_test(ref, s, s, 30, DepthConfig{}, 3);
  EXPECT_EQ(r.p, 1.0);
  EXPECT_EQ(r.z, 0.0);
}

TEST(Wilcoxon, TranslatedGroupIsDetected) {
  const auto ref = sample("circles", 20, 1, 64);
  const auto s0 = sample("circles", 12, 2, 64);
  const auto s1 = shifted(sample("circles", 12, 3, 64), 10.0, "t-");
  const auto r = wilcoxon_depth_test(ref, s0, s1, 30, DepthConfig{}, 4);
  EXPECT_LT(r.p, 0.01);
}

TEST(Outliers, SizesMode) {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> d(100);
  for (auto& v : d) v = u(g);
  const auto p = outlier_partition_sizes(d, {15, 35, 49, 1});
  std::array<std::size_t, 4> count{};
  for (int grp : p.group) ++count[grp];
  EXPECT_EQ(count, (std::array<std::size_t, 4>{15, 35, 49, 1}));
  const std::size_t top = std::max_element(d.begin(), d.end()) - d.begin();
  EXPECT_EQ(p.group[top], kDeepest);
  for (std::size_t i = 0; i < 100; ++i)
    for (std::size_t j = 0; j < 100; ++j)
      if (p.group[i] < p.group[j]) {
        EXPECT_LE(d[i], d[j]);
      }
  EXPECT_THROW(outlier_partition_sizes(d, {1, 1, 1, 1}), Error);
}

TEST(Outliers, ThresholdMode) {
  const std::vector<double> d = {0.05, 0.2, 0.9};
  const auto p = outlier_partition_threshold(d, 0.075);
  EXPECT_EQ(p.sizes[kOutlier], 1u);
  EXPECT_EQ(p.group[0], kOutlier);
  EXPECT_EQ(p.group[2], kDeepest);
}

TEST(Outliers, TiesBrokenByIndex) {
  const std::vector<double> d(6, 0.5);
  const auto p = outlier_partition_sizes(d, {2, 1, 2, 1});
  // the lowest index ranks deepest
  EXPECT_EQ(p.group[0], kDeepest);
  EXPECT_EQ(p.group[5], kOutlier);
  EXPECT_EQ(p.group[4], kOutlier);
  const auto again = outlier_partition_sizes(d, {2, 1, 2, 1});
  EXPECT_EQ(p.group, again.group);
}
