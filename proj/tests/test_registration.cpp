#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "curvedepth/error.hpp"
#include "curvedepth/registration.hpp"
#include "curvedepth/schemes.hpp"

using namespace curvedepth;

namespace {

Curve wiggle(const std::string& id) {
  std::vector<double> xy;
  for (int i = 0; i <= 60; ++i) {
    const double t = i / 60.0;
    xy.push_back(3 * t);
    xy.push_back(std::sin(5 * t) + 0.3 * t * t);
  }
  return Curve(id, 2, xy);
}

Curve moved(const Curve& c, double angle, double tx, double ty) {
  Similarity f = Similarity::identity(2);
  f.rotation = rotation_2d(angle);
  f.translation = {tx, ty};
  return apply_similarity(c, f).with_id("moved");
}

}  // namespace

TEST(Registration, RecoversRigidCopy) {
  const Curve target = wiggle("t");
  const Curve mv = moved(target, std::numbers::pi / 6, 1.0, 2.0);
  const auto r = register_rigid(mv, target, RegisterOptions{}, 3);
  EXPECT_LE(r.distance, 0.02 * target.length());
  EXPECT_LE(r.distance, r.initial_distance);
  // returned transform reproduces the reported distance
  EXPECT_NEAR(curve_distance(r.transform.apply(mv), target, {100, false}), r.distance, 1e-9);
}

TEST(Registration, IdentityCase) {
  const Curve target = wiggle("t");
  const auto r = register_rigid(target, target, RegisterOptions{}, 1);
  EXPECT_EQ(r.initial_distance, 0.0);
  EXPECT_EQ(r.distance, 0.0);
}

TEST(Registration, ReducesPerturbedCopiesAtLeastTwofold) {
  const Curve target = wiggle("t");
  for (int k = 0; k < 4; ++k) {
    const Curve mv = moved(target, 0.3 + 0.2 * k, -0.5 * k, 0.4 + 0.1 * k);
    const auto r = register_rigid(mv, target, RegisterOptions{}, 10 + k);
    EXPECT_GE(r.initial_distance, 2.0 * r.distance);
  }
}

TEST(Registration, LocalFixpoint) {
  const Curve target = wiggle("t");
  const Curve mv = moved(target, 0.8, 0.3, -0.4);
  RegisterOptions opt;
  opt.restarts = 3;
  const auto r = register_rigid(mv, target, opt, 2);
  const Curve aligned = r.transform.apply(mv);
  const auto again = register_rigid(aligned, target, opt, 4);
  EXPECT_LE(r.distance - again.distance, 1e-3);
}

TEST(Registration, ThreeDimensions) {
  std::vector<double> xyz;
  for (int i = 0; i <= 40; ++i) {
    const double t = i / 40.0;
    xyz.insert(xyz.end(), {std::cos(4 * t), std::sin(4 * t), 2 * t});
  }
  const Curve target("t", 3, xyz);
  Similarity f = Similarity::identity(3);
  f.rotation = rotation_3d(0.3, -0.2, 0.25);
  f.translation = {0.5, -0.3, 0.2};
  const Curve mv = apply_similarity(target, f);
  const auto r = register_rigid(mv, target, RegisterOptions{}, 5);
  EXPECT_LT(r.distance, 0.5 * r.initial_distance);
  EXPECT_EQ(r.params.size(), 6u);
  check_orthogonal(r.transform.rotation, 3);
}

TEST(Registration, RejectsOtherDimensions) {
  const Curve a("a", 1, {0, 1});
  EXPECT_THROW(register_rigid(a, a, RegisterOptions{}, 1), Error);
}

TEST(Deepest, SampleOfOneAndTies) {
  const std::vector<Curve> one = {Curve("a", 2, {0, 0, 1, 1})};
  EXPECT_EQ(deepest(one, 10, DepthConfig{}, 1).first, 0u);
  const std::vector<Curve> same = {Curve("a", 2, {0, 0, 1, 1}), Curve("a", 2, {0, 0, 1, 1})};
  // equal curves may still get different MC depths; only check the range
  EXPECT_LT(deepest(same, 10, DepthConfig{}, 1).first, 2u);
}

TEST(Deepest, CirclesPickMiddleRadius) {
  SchemeSpec s;
  s.name = "circles";
  s.n = 40;
  s.vertices = 64;
  const auto cs = generate(s, 3);
  const auto [idx, rep] = deepest(cs, 60, DepthConfig{}, 2);
  const double r = std::hypot(cs[idx].vertex(0)[0], cs[idx].vertex(0)[1]);
  EXPECT_GE(r, 0.3);
  EXPECT_LE(r, 0.55);
  EXPECT_EQ(rep.id, cs[idx].id());
}
