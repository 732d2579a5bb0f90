#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "curvedepth/clustering.hpp"
#include "curvedepth/error.hpp"
#include "curvedepth/schemes.hpp"

using namespace curvedepth;

namespace {

std::vector<Curve> bundles(std::uint64_t seed, std::size_t per = 15) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> r(0.5, 1.0);
  const double centres[3][2] = {{0, 0}, {10, 0}, {0, 10}};
  std::vector<Curve> out;
  for (int b = 0; b < 3; ++b)
    for (std::size_t i = 0; i < per; ++i) {
      Similarity f = Similarity::identity(2);
      f.translation = {centres[b][0], centres[b][1]};
      out.push_back(apply_similarity(circle_curve(r(g), 64), f).with_id("b" + std::to_string(b) + "-" + std::to_string(i)));
    }
  return out;
}

// misclassifications up to relabelling, for K = 3 blocks of equal size
std::size_t errors3(const std::vector<std::size_t>& a, std::size_t per) {
  std::size_t best = a.size();
  std::size_t perm[3] = {0, 1, 2};
  do {
    std::size_t e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e += a[i] != perm[i / per];
    best = std::min(best, e);
  } while (std::next_permutation(perm, perm + 3));
  return best;
}

}  // namespace

TEST(Clustering, RelativeDepthExamples) {
  DistanceMatrix t2{1, 2, {0.8, 0.1}};
  const std::vector<std::size_t> a0 = {0};
  EXPECT_DOUBLE_EQ(relative_depth(0, a0, t2), 0.7);
  DistanceMatrix eq{1, 2, {0.4, 0.4}};
  EXPECT_EQ(relative_depth(0, a0, eq), 0.0);
  DistanceMatrix t3{1, 3, {0.2, 0.5, 0.4}};
  const std::vector<std::size_t> a1 = {1};
  EXPECT_DOUBLE_EQ(relative_depth(0, a1, t3), 0.3);
}

TEST(Clustering, SilhouetteExamples) {
  // two tight groups far apart
  std::vector<double> pos = {0, 0.1, 0.2, 10, 10.1, 10.2};
  DistanceMatrix d{6, 6, std::vector<double>(36)};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) d.at(i, j) = std::abs(pos[i] - pos[j]);
  const std::vector<std::size_t> good = {0, 0, 0, 1, 1, 1};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_GE(silhouette(i, good, 2, d), 0.9);
  const std::vector<std::size_t> bad = {0, 1, 1, 0, 0, 1};
  EXPECT_LT(silhouette(0, bad, 2, d), 0.0);

  // point equidistant from both groups on average
  DistanceMatrix e{3, 3, {0, 1, 1, 1, 0, 1, 1, 1, 0}};
  const std::vector<std::size_t> a = {0, 0, 1};
  EXPECT_EQ(silhouette(0, a, 2, e), 0.0);
  // singleton: own average taken as 0
  EXPECT_DOUBLE_EQ(silhouette(2, a, 2, e), 1.0);
}

TEST(Clustering, ThreeBundlesSeparate) {
  const auto cs = bundles(1);
  ClusterOptions opt;
  opt.k = 3;
  opt.restarts = 5;
  const auto p = ddclust(cs, opt, 1);
  EXPECT_EQ(errors3(p.assignment, 15), 0u);
  EXPECT_LT(p.restart, 5u);
  for (double s : p.sil) {
    EXPECT_GE(s, -1.0);
    EXPECT_LE(s, 1.0);
  }
  double sum = 0.0;
  for (double c : p.cost) sum += c;
  EXPECT_NEAR(p.total, sum / cs.size(), 1e-12);
}

TEST(Clustering, DuplicatedGroupsSplitPerfectly) {
  std::vector<Curve> cs;
  for (int i = 0; i < 6; ++i) cs.emplace_back("a" + std::to_string(i), 2, std::vector<double>{0, 0, 1, 0, 1, 1});
  for (int i = 0; i < 6; ++i) cs.emplace_back("b" + std::to_string(i), 2, std::vector<double>{5, 5, 6, 5, 6, 6});
  ClusterOptions opt;
  const auto p = ddclust(cs, opt, 3);
  for (int i = 1; i < 6; ++i) EXPECT_EQ(p.assignment[i], p.assignment[0]);
  for (int i = 7; i < 12; ++i) EXPECT_EQ(p.assignment[i], p.assignment[6]);
  EXPECT_NE(p.assignment[0], p.assignment[6]);
}

TEST(Clustering, DeterministicPerSeed) {
  const auto cs = bundles(2, 6);
  ClusterOptions opt;
  opt.k = 3;
  const auto a = ddclust(cs, opt, 11);
  setenv("CURVEDEPTH_THREADS", "3", 1);
  const auto b = ddclust(cs, opt, 11);
  unsetenv("CURVEDEPTH_THREADS");
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.total, b.total);
}

TEST(Clustering, NoClusterEverEmpties) {
  const auto cs = bundles(3, 4);
  ClusterOptions opt;
  opt.k = 4;
  opt.paper_acceptance = true;
  const auto p = ddclust(cs, opt, 5);
  std::vector<std::size_t> sizes(4, 0);
  for (auto a : p.assignment) ++sizes[a];
  for (auto s : sizes) EXPECT_GT(s, 0u);
}

TEST(Clustering, Errors) {
  const auto cs = bundles(4, 1);
  ClusterOptions opt;
  opt.k = 1;
  EXPECT_THROW(ddclust(cs, opt, 1), Error);
  opt.k = 4;
  EXPECT_THROW(ddclust(cs, opt, 1), Error);
  opt.k = 2;
  opt.threshold = 0.5;
  EXPECT_THROW(ddclust(cs, opt, 1), Error);
}

TEST(Clustering, GreedyAcceptancesNeverLowerCost) {
  // with T very low nothing is a candidate, so the start is returned as is
  const auto cs = bundles(5, 4);
  ClusterOptions opt;
  opt.k = 3;
  opt.threshold = -10.0;
  const auto p = ddclust(cs, opt, 2);
  EXPECT_EQ(p.accepted, 0u);
  EXPECT_EQ(p.iterations, opt.stall);
}
