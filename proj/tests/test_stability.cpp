#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "advgrasp/quality.hpp"
#include "support.hpp"

namespace advgrasp {
namespace {

const double kCrossMargin = 1.0 / std::sqrt(6.0);

TEST(HullMargin, CrossPolytopeExact) {
  const StabilityMargin m = exact_hull_margin(test::as_set(test::cross_polytope()));
  EXPECT_NEAR(m.signed_margin, kCrossMargin, 1e-9);
  EXPECT_EQ(m.method, MarginMethod::Exact);
  EXPECT_FALSE(m.degenerate);
}

TEST(HullMargin, CrossPolytopeSampled) {
  const StabilityMargin m = signed_hull_margin(test::as_set(test::cross_polytope()));
  EXPECT_GE(m.signed_margin, kCrossMargin - 1e-9);
  EXPECT_LE(m.signed_margin, kCrossMargin * 1.02);
}

TEST(HullMargin, SinglePointIsOutside) {
  Wrench6 w = Wrench6::Zero();
  w(0) = 1;
  const StabilityMargin s = signed_hull_margin(test::as_set({w}));
  EXPECT_NEAR(s.signed_margin, -1.0, 1e-9);
  EXPECT_EQ(s.gs_value, 0.0);
  const StabilityMargin e = exact_hull_margin(test::as_set({w}));
  EXPECT_NEAR(e.signed_margin, -1.0, 1e-12);
  EXPECT_TRUE(e.degenerate);
}

TEST(HullMargin, ScalesLinearly) {
  std::vector<Wrench6> pts = test::cross_polytope();
  for (Wrench6& w : pts) w *= 3.5;
  EXPECT_NEAR(exact_hull_margin(test::as_set(pts)).signed_margin, 3.5 * kCrossMargin, 1e-9);
  const double sampled = signed_hull_margin(test::as_set(pts)).signed_margin;
  const double base = signed_hull_margin(test::as_set(test::cross_polytope())).signed_margin;
  EXPECT_NEAR(sampled, 3.5 * base, 1e-9);
}

TEST(HullMargin, OriginOutsideHalfSpace) {
  std::mt19937_64 rng(5);
  std::vector<Wrench6> pts = test::random_ball_points(rng, 7);
  for (Wrench6& w : pts) w(0) = 0.5 + std::abs(w(0));
  const StabilityMargin e = exact_hull_margin(test::as_set(pts));
  const StabilityMargin s = signed_hull_margin(test::as_set(pts));
  EXPECT_EQ(e.gs_value, 0.0);
  EXPECT_EQ(s.gs_value, 0.0);
  EXPECT_LT(s.signed_margin, 0.0);
  EXPECT_NEAR(-e.signed_margin, distance_to_hull(pts), 1e-9);
}

TEST(HullMargin, SampledNeverBelowExact) {
  std::mt19937_64 rng(2024);
  int checked = 0;
  while (checked < 10) {
    const auto pts = test::random_ball_points(rng, 20);
    const StabilityMargin e = exact_hull_margin(test::as_set(pts));
    if (e.signed_margin <= 0) continue;
    const StabilityMargin s = signed_hull_margin(test::as_set(pts));
    EXPECT_GE(s.signed_margin, e.signed_margin - 1e-9);
    EXPECT_LE(s.signed_margin, e.signed_margin * 1.05);
    ++checked;
  }
}

TEST(HullMargin, SeedMakesResultReproducible) {
  std::mt19937_64 rng(8);
  const auto pts = test::random_ball_points(rng, 30);
  const double a = signed_hull_margin(test::as_set(pts)).signed_margin;
  const double b = signed_hull_margin(test::as_set(pts)).signed_margin;
  EXPECT_EQ(a, b);
}

TEST(DistanceToHull, KnownSegment) {
  Wrench6 a = Wrench6::Zero();
  Wrench6 b = Wrench6::Zero();
  a << 1, -1, 0, 0, 0, 2;
  b << 1, 1, 0, 0, 0, 2;
  const std::vector<Wrench6> pts{a, b};
  EXPECT_NEAR(distance_to_hull(pts), std::sqrt(5.0), 1e-12);
}

TEST(DistanceToHull, ZeroWhenOriginInside) {
  EXPECT_NEAR(distance_to_hull(test::cross_polytope()), 0.0, 1e-12);
}

TEST(GraspStability, AntipodalSphereIsForceClosure) {
  const TriangleMesh sphere = test::unit_sphere();
  const GraspConfig g = test::antipodal_sphere_grasp(sphere);
  const StabilityMargin s = grasp_stability(sphere, g);
  EXPECT_GT(s.signed_margin, 0.0);
  // 2 contacts x 8 edges x 2 torsion signs = 32 primitives: exact oracle applies.
  StabilityOptions exact;
  exact.exact = true;
  const StabilityMargin e = grasp_stability(sphere, g, exact);
  EXPECT_EQ(e.method, MarginMethod::Exact);
  EXPECT_GE(s.signed_margin, e.signed_margin - 1e-9);
  EXPECT_LE(s.signed_margin, e.signed_margin * 1.02);
}

TEST(GraspStability, SingleContactHasNoMargin) {
  const TriangleMesh sphere = test::unit_sphere();
  GraspConfig g;
  g.contacts.push_back(snap_to_surface(sphere, Vec3(1, 0, 0)));
  EXPECT_EQ(grasp_stability(sphere, g).gs_value, 0.0);
  StabilityOptions exact;
  exact.exact = true;
  const StabilityMargin e = grasp_stability(sphere, g, exact);
  EXPECT_EQ(e.gs_value, 0.0);
  EXPECT_LT(e.signed_margin, 0.0);
}

TEST(GraspStability, ThirdContactDoesNotLowerMargin) {
  const TriangleMesh sphere = test::unit_sphere();
  GraspConfig g = test::antipodal_sphere_grasp(sphere);
  g.friction.cone_edges = 4;
  StabilityOptions exact;
  exact.exact = true;
  const double two = grasp_stability(sphere, g, exact).signed_margin;
  g.contacts.push_back(snap_to_surface(sphere, Vec3(0, 1, 0.2)));
  const double three = grasp_stability(sphere, g, exact).signed_margin;
  EXPECT_GE(three, two - 1e-12);
}

TEST(GraspPrimitives, TorqueScaleIsInverseRadius) {
  const TriangleMesh sphere = test::unit_sphere();
  const GraspScene scene = assemble_scene(sphere, test::antipodal_sphere_grasp(sphere));
  const WrenchPrimitiveSet set = grasp_primitives(scene, FrictionParams{});
  EXPECT_EQ(set.primitives.size(), 32u);
  EXPECT_NEAR(set.torque_scale, 1.0 / scene.radius, 1e-15);
  EXPECT_NEAR(scene.radius, 1.0, 1e-12);
}

}  // namespace
}  // namespace advgrasp
