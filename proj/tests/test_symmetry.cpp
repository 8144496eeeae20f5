#include <gtest/gtest.h>

#include <random>

#include "oracle_values.hpp"
#include "polyform/generators.hpp"
#include "polyform/symmetry.hpp"
#include "test_support.hpp"

using namespace polyform;

namespace {

std::string label_of(const std::vector<Vec3> &pts) { return detect_point_group(pts).label.str(); }
std::string label_of(const Configuration &c) { return detect_point_group(c).label.str(); }

std::vector<Vec3> prism(int k, double half_height) {
  auto top = regular_polygon(k, 1.0, half_height);
  const auto bottom = regular_polygon(k, 1.0, -half_height);
  top.insert(top.end(), bottom.begin(), bottom.end());
  return top;
}

} // namespace

TEST(Symmetry, PlatonicSolids) {
  EXPECT_EQ(label_of(platonic(PlatonicKind::Tetrahedron)), "T_d");
  EXPECT_EQ(label_of(platonic(PlatonicKind::Cube)), "O_h");
  EXPECT_EQ(label_of(platonic(PlatonicKind::Octahedron)), "O_h");
  EXPECT_EQ(label_of(platonic(PlatonicKind::Icosahedron)), "Y_h");
  EXPECT_EQ(label_of(platonic(PlatonicKind::Dodecahedron)), "Y_h");
  EXPECT_EQ(label_of(truncated_icosahedron().vertices), "Y_h");
}

TEST(Symmetry, GroupSizesMatchOrders) {
  const auto r = detect_point_group(platonic(PlatonicKind::Icosahedron));
  EXPECT_EQ(r.group_size, 120u);
  EXPECT_EQ(r.rotation_order, 60u);
  EXPECT_FALSE(r.unstable);
  EXPECT_EQ(detect_point_group(platonic(PlatonicKind::Cube)).group_size, static_cast<std::size_t>(oracle::kOrderOh));
}

TEST(Symmetry, AxialFamilies) {
  EXPECT_EQ(label_of(bipyramid(3)), "D_3h");
  EXPECT_EQ(label_of(bipyramid(5)), "D_5h");
  EXPECT_EQ(label_of(square_antiprism(0.6)), "D_4d");
  EXPECT_EQ(label_of(prism(6, 0.3)), "D_6h");
  EXPECT_EQ(label_of(regular_polygon(7)), "D_7h");

  auto pyramid = regular_polygon(5);
  pyramid.push_back({0, 0, 0.8});
  EXPECT_EQ(label_of(pyramid), "C_5v");

  // a twisted prism keeps only the rotations
  auto twisted = regular_polygon(4, 1.0, 0.4);
  const auto lower = regular_polygon(4, 1.0, -0.4, 0.3);
  twisted.insert(twisted.end(), lower.begin(), lower.end());
  EXPECT_EQ(label_of(twisted), "D_4");
}

TEST(Symmetry, LowSymmetry) {
  EXPECT_EQ(label_of(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0.2, 0.7, 0}, {0.1, 0.3, 0.9}}), "C_1");
  // scalene triangle lies in its own mirror plane
  EXPECT_EQ(label_of(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0.2, 0.7, 0}}), "C_1h");
  // centrosymmetric pairs spanning 3D; two pairs alone would be coplanar (C_2h)
  EXPECT_EQ(label_of(std::vector<Vec3>{{1, 0.2, 0.3}, {-1, -0.2, -0.3}, {0.1, 1, -0.5}, {-0.1, -1, 0.5}}), "C_2h");
  EXPECT_EQ(label_of(std::vector<Vec3>{{1, 0.2, 0.3}, {-1, -0.2, -0.3}, {0.1, 1, -0.5}, {-0.1, -1, 0.5},
                                       {0.3, -0.4, 1.2}, {-0.3, 0.4, -1.2}}),
            "C_i");
}

TEST(Symmetry, LinearSets) {
  EXPECT_EQ(label_of(std::vector<Vec3>{{0, 0, -1}, {0, 0, 1}}), "D_∞h");
  EXPECT_EQ(label_of(std::vector<Vec3>{{0, 0, -1}, {0, 0, 0.2}, {0, 0, 1}}), "C_∞v");
  EXPECT_EQ(detect_point_group(std::vector<Vec3>{{0, 0, -1}, {0, 0, 1}}).group_size, 0u);
}

TEST(Symmetry, InvariantUnderRandomRotations) {
  std::mt19937_64 rng(12);
  const std::vector<std::pair<std::vector<Vec3>, std::string>> shapes{
      {test::points_of(platonic(PlatonicKind::Icosahedron)), "Y_h"},
      {test::points_of(platonic(PlatonicKind::Tetrahedron)), "T_d"},
      {test::points_of(square_antiprism(0.6)), "D_4d"},
      {test::points_of(bipyramid(5)), "D_5h"}};
  for (const auto &[pts, label] : shapes)
    for (int t = 0; t < 100; ++t)
      EXPECT_EQ(label_of(test::random_similarity(pts, rng)), label);
}

TEST(Symmetry, ToleranceAmbiguityIsFlagged) {
  auto pts = test::points_of(platonic(PlatonicKind::Octahedron));
  pts[0].x += 3e-5; // between tol/10 and tol
  const auto r = detect_point_group(pts, 1e-4);
  EXPECT_EQ(r.label.str(), "O_h");
  EXPECT_TRUE(r.unstable);
  ASSERT_TRUE(r.alternate.has_value());
  EXPECT_NE(r.alternate->str(), "O_h");
}

TEST(Symmetry, LargePerturbationBreaksSymmetry) {
  auto pts = test::points_of(platonic(PlatonicKind::Cube));
  pts[0] = normalized(pts[0] + Vec3{0.05, -0.02, 0.01});
  EXPECT_NE(label_of(pts), "O_h");
}

TEST(GroupOrder, KnownOrders) {
  const std::pair<const char *, std::size_t> table[] = {
      {"C_1", 1},   {"C_5", 5},   {"C_2v", 4},  {"C_1h", 2},  {"C_3h", 6},  {"S_4", 4},   {"S_6", 6},
      {"C_i", 2},   {"D_3", 6},   {"D_4d", 16}, {"D_5h", 20}, {"D_6d", 24}, {"T", 12},    {"T_d", 24},
      {"T_h", 24},  {"O", 24},    {"O_h", 48},  {"Y", 60},    {"Y_h", 120}, {"C_s", 2},   {"I_h", 120}};
  for (const auto &[label, order] : table)
    EXPECT_EQ(group_order(SchoenfliesLabel::parse(label)), order) << label;
  EXPECT_EQ(group_order(SchoenfliesLabel::parse("Y")), static_cast<std::size_t>(oracle::kOrderY));
  EXPECT_THROW(group_order(SchoenfliesLabel::parse("D_∞h")), InfiniteGroup);
  EXPECT_THROW(group_order(SchoenfliesLabel::parse("C_infv")), InfiniteGroup);
}

TEST(Labels, ParseRoundTrip) {
  for (const char *s : {"C_1", "C_2v", "C_1h", "S_4", "D_4d", "D_3h", "T", "T_d", "O_h", "Y_h", "C_i", "D_∞h", "C_∞v"})
    EXPECT_EQ(SchoenfliesLabel::parse(s).str(), s);
  EXPECT_EQ(SchoenfliesLabel::parse("S_2").str(), "C_i");
  EXPECT_THROW(SchoenfliesLabel::parse("Q_3"), InvalidArgument);
  EXPECT_THROW(SchoenfliesLabel::parse("S_3"), InvalidArgument);
  EXPECT_THROW(SchoenfliesLabel::parse("D_1"), InvalidArgument);
}

TEST(AlignPrincipal, CentresAndIsIdempotent) {
  std::mt19937_64 rng(21);
  std::vector<Configuration> shapes{platonic(PlatonicKind::Cube), platonic(PlatonicKind::Icosahedron),
                                    Configuration(test::random_cloud(9, rng), Constraint::Free)};
  for (const auto &c : shapes) {
    const auto a = align_principal(c);
    EXPECT_NEAR(norm(centroid(a.points())), 0.0, 1e-12);
    const auto b = align_principal(a);
    for (std::size_t i = 0; i < a.size(); ++i)
      EXPECT_NEAR(distance(a[i], b[i]), 0.0, 1e-9);
  }
}

TEST(AlignPrincipal, RotatedOctahedronBecomesAxisAligned) {
  std::mt19937_64 rng(5);
  const auto base = test::points_of(platonic(PlatonicKind::Octahedron));
  for (int t = 0; t < 20; ++t) {
    const auto moved = test::rotate(base, test::random_rotation(rng));
    const auto a = align_principal(Configuration(moved, Constraint::UnitSphere));
    for (const Vec3 &p : a.points()) {
      const double big = std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)});
      EXPECT_NEAR(big, 1.0, 1e-10);
      EXPECT_NEAR(norm(p), 1.0, 1e-10);
    }
  }
}

TEST(AlignPrincipal, BipyramidAxisOnZ) {
  std::mt19937_64 rng(6);
  const auto moved = test::rotate(test::points_of(bipyramid(5)), test::random_rotation(rng));
  const auto a = align_principal(Configuration(moved, Constraint::UnitSphere));
  EXPECT_NEAR(std::abs(a[5].z), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(a[6].z), 1.0, 1e-10);
  EXPECT_THROW(align_principal(Configuration({{1, 0, 0}}, Constraint::Free)), InvalidArgument);
}

TEST(AlignPrincipal, RotationOnlyChangesSigns) {
  std::mt19937_64 rng(7);
  const auto base = test::random_cloud(8, rng);
  const auto a = align_principal(Configuration(base, Constraint::Free));
  for (int t = 0; t < 20; ++t) {
    const auto b = align_principal(Configuration(test::rotate(base, test::random_rotation(rng)), Constraint::Free));
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_NEAR(std::abs(a[i].x), std::abs(b[i].x), 1e-8);
      EXPECT_NEAR(std::abs(a[i].y), std::abs(b[i].y), 1e-8);
      EXPECT_NEAR(std::abs(a[i].z), std::abs(b[i].z), 1e-8);
    }
  }
}
