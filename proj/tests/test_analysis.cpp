#include <gtest/gtest.h>

#include <random>

#include "polyform/analysis.hpp"
#include "polyform/generators.hpp"
#include "polyform/optimize.hpp"
#include "test_support.hpp"

using namespace polyform;

TEST(Bounds, ClosedForms) {
  EXPECT_DOUBLE_EQ(toth_lower_bound(2), 0.5 - 8.0 / 3.0);
  EXPECT_NEAR(central_lower_bound(8), 0.9 * 8 * 3, 1e-12);
  EXPECT_DOUBLE_EQ(central_lower_bound(1), 0.0);
  const auto m = monopole_estimates(6);
  EXPECT_NEAR(m.radius, 4.0 - 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(m.energy, -48.0 + 2.0 - 0.125, 1e-12);
  EXPECT_NEAR(geom_energy_fit(10), -14.3 + 7.92 + 0.572 - 1.584, 1e-12);
  EXPECT_THROW(toth_lower_bound(1), InvalidArgument);
  EXPECT_THROW(monopole_estimates(1), InvalidArgument);
}

TEST(Bounds, TothHoldsForTwoPoints) {
  // antipodal pair: E = -2 > 1/2 - 8/3
  const auto r = make_bound_report("toth", 2, toth_lower_bound(2), -2.0, BoundSense::StrictlyAbove);
  EXPECT_TRUE(r.satisfied);
  EXPECT_GT(r.relative_gap, 0.0);
}

TEST(Bounds, ReportSenses) {
  EXPECT_FALSE(make_bound_report("x", 3, 1.0, 1.0, BoundSense::StrictlyAbove).satisfied);
  EXPECT_TRUE(make_bound_report("x", 3, 1.0, 1.0, BoundSense::Above).satisfied);
  EXPECT_TRUE(make_bound_report("x", 3, -10.0, -10.15, BoundSense::Within, 0.02).satisfied);
  EXPECT_FALSE(make_bound_report("x", 3, -10.0, -10.3, BoundSense::Within, 0.02).satisfied);
}

TEST(Fullerene, TruncatedIcosahedronAndDodecahedron) {
  const auto c60 = validate_fullerene(truncated_icosahedron());
  EXPECT_TRUE(c60.identities_hold);
  EXPECT_EQ(c60.pentagons, 12u);
  EXPECT_EQ(c60.hexagons, 20u);
  const auto c20 = validate_fullerene(convex_hull(platonic(PlatonicKind::Dodecahedron)));
  EXPECT_TRUE(c20.identities_hold);
  EXPECT_EQ(c20.hexagons, 0u);
  EXPECT_FALSE(validate_fullerene(convex_hull(platonic(PlatonicKind::Cube))).identities_hold);
}

TEST(Fullerene, DualOfThomson32) {
  OptimizerSettings s;
  s.seed = 42;
  s.start_count = 40;
  const auto run = multi_start(RieszSphere{1.0}, 32, s);
  const auto hull = convex_hull(run.best);
  const auto census = deltahedron_census(hull);
  EXPECT_TRUE(census.is_deltahedron);
  EXPECT_EQ(census.pentamers, 12u);
  EXPECT_EQ(census.hexamers, 20u);
  const auto report = validate_fullerene(dual(hull));
  EXPECT_TRUE(report.identities_hold);
  EXPECT_EQ(report.V, 60u);
}

TEST(Deltahedron, Icosahedron) {
  const auto c = deltahedron_census(convex_hull(platonic(PlatonicKind::Icosahedron)));
  EXPECT_TRUE(c.is_deltahedron);
  EXPECT_EQ(c.pentamers, 12u);
  EXPECT_EQ(c.hexamers + c.others, 0u);
  EXPECT_FALSE(deltahedron_census(convex_hull(platonic(PlatonicKind::Cube))).is_deltahedron);
}

TEST(Combinatorics, CompareWithDual) {
  const auto cube = convex_hull(platonic(PlatonicKind::Cube));
  const auto octa = convex_hull(platonic(PlatonicKind::Octahedron));
  EXPECT_FALSE(compare_combinatorics(cube, octa));
  EXPECT_TRUE(compare_combinatorics(cube, octa, true));
}

TEST(Radial, Profile) {
  const auto p = radial_profile(platonic(PlatonicKind::Icosahedron).points());
  EXPECT_NEAR(p.mean, 1.0, 1e-14);
  EXPECT_NEAR(p.max_relative_deviation, 0.0, 1e-14);
  const std::vector<Vec3> uneven{{1, 0, 0}, {-2, 0, 0}, {0, 1.5, 0}, {0, -0.5, 0}};
  EXPECT_GT(radial_profile(uneven).max_relative_deviation, 0.1);
}

TEST(Hungarian, SmallMatrix) {
  const std::vector<std::vector<double>> cost{{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  const auto a = hungarian(cost);
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    total += cost[i][a[i]];
  EXPECT_DOUBLE_EQ(total, 5.0);
}

TEST(Alignment, RecoversRelabeledSimilarity) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 20; ++t) {
    const auto base = test::random_cloud(10, rng);
    auto moved = test::random_similarity(base, rng);
    if (t % 2 == 1)
      for (Vec3 &p : moved)
        p.x = -p.x; // mirror image
    std::shuffle(moved.begin(), moved.end(), rng);
    const auto a = align_configurations(base, moved);
    EXPECT_LT(a.max_relative_deviation, 1e-8);
    EXPECT_LT(a.rms, 1e-8);
  }
}

TEST(Alignment, DetectsDifferentShapes) {
  const auto a = align_configurations(platonic(PlatonicKind::Cube), square_antiprism(0.6));
  EXPECT_GT(a.max_relative_deviation, 0.05);
  EXPECT_THROW(align_configurations(std::vector<Vec3>{{0, 0, 0}}, std::vector<Vec3>{}), InvalidArgument);
}
