#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle_values.hpp"
#include "polyform/atiyah.hpp"
#include "polyform/energies.hpp"
#include "polyform/generators.hpp"
#include "test_support.hpp"

using namespace polyform;

namespace {

double central_difference_error(const EnergyModel &model, const std::vector<Vec3> &pts) {
  std::vector<Vec3> g(pts.size());
  detail::evaluate(model, pts, g);
  double diff2 = 0.0, norm2g = 0.0;
  auto x = pts;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (int axis = 0; axis < 3; ++axis) {
      double &c = axis == 0 ? x[i].x : axis == 1 ? x[i].y : x[i].z;
      const double saved = c, h = 1e-5 * std::max(1.0, std::abs(saved));
      c = saved + h;
      const double fp = detail::evaluate(model, x, {});
      c = saved - h;
      const double fm = detail::evaluate(model, x, {});
      c = saved;
      const double fd = (fp - fm) / (2.0 * h);
      const double an = axis == 0 ? g[i].x : axis == 1 ? g[i].y : g[i].z;
      diff2 += (fd - an) * (fd - an);
      norm2g += an * an;
    }
  return std::sqrt(diff2) / std::max(std::sqrt(norm2g), 1e-8);
}

std::vector<Vec3> spaced_cloud(std::size_t n, std::mt19937_64 &rng, double min_sep) {
  const double box = 0.8 * std::cbrt(static_cast<double>(n)) + 0.5;
  for (;;) {
    auto pts = test::random_cloud(n, rng, box);
    if (min_pair_distance(pts) >= min_sep)
      return pts;
  }
}

std::vector<Vec3> sample_for(const EnergyModel &model, std::size_t n, std::mt19937_64 &rng) {
  if (std::holds_alternative<RieszSphere>(model) || std::holds_alternative<SumSeparation>(model))
    return test::random_sphere(n, rng);
  if (std::holds_alternative<LennardJones>(model))
    return spaced_cloud(n, rng, 0.8);
  return spaced_cloud(n, rng, 0.05);
}

const EnergyModel kSmooth[] = {RieszSphere{1.0},   RieszSphere{2.5},  SumSeparation{}, CentralCoulomb{},
                               MonopoleLinear{},   LennardJones{},    AtiyahDet{},     TriangleApprox{}};

} // namespace

TEST(Energies, ThomsonClosedForms) {
  EXPECT_NEAR(energy(RieszSphere{1.0}, platonic(PlatonicKind::Tetrahedron)), 6.0 / std::sqrt(8.0 / 3.0), 1e-12);
  EXPECT_NEAR(energy(RieszSphere{1.0}, platonic(PlatonicKind::Octahedron)), oracle::kThomson6, 1e-12);
  const Configuration two({{0, 0, 1}, {0, 0, -1}}, Constraint::UnitSphere);
  EXPECT_DOUBLE_EQ(energy(RieszSphere{1.0}, two), 0.5);
  EXPECT_DOUBLE_EQ(energy(RieszSphere{2.0}, two), 0.25);
  EXPECT_DOUBLE_EQ(energy(SumSeparation{}, two), -2.0);
}

TEST(Energies, PairPotentials) {
  const Configuration pair({{0, 0, 0}, {1, 0, 0}}, Constraint::Free);
  EXPECT_DOUBLE_EQ(energy(LennardJones{}, pair), -1.0);
  EXPECT_DOUBLE_EQ(energy(CentralCoulomb{}, pair), 1.0 + 0.5);
  EXPECT_DOUBLE_EQ(energy(MonopoleLinear{}, pair), -1.0 + 0.5);
  const auto g = gradient(LennardJones{}, pair);
  EXPECT_NEAR(norm(g[0]), 0.0, 1e-12);
}

TEST(Energies, ConstraintAndCountErrors) {
  const Configuration free({{0, 0, 0}, {1, 0, 0}}, Constraint::Free);
  EXPECT_THROW(energy(RieszSphere{1.0}, free), ConstraintMismatch);
  const Configuration sphere({{0, 0, 1}, {0, 0, -1}}, Constraint::UnitSphere);
  EXPECT_THROW(energy(LennardJones{}, sphere), ConstraintMismatch);
  EXPECT_THROW(energy(TriangleApprox{}, free), InvalidArgument);
  const Configuration dup({{0, 0, 0}, {0, 0, 0}}, Constraint::Free);
  EXPECT_THROW(energy(LennardJones{}, dup), CoincidentPoints);
  EXPECT_THROW(gradient(MaximinDistance{}, sphere), Unsupported);
  EXPECT_DOUBLE_EQ(energy(MaximinDistance{}, sphere), -2.0);
  const Configuration disk({{0.5, 0, 0}, {-0.5, 0, 0}}, Constraint::UnitDisk);
  EXPECT_DOUBLE_EQ(energy(RieszSphere{1.0}, disk), 1.0);
}

TEST(Energies, GradientsMatchCentralDifferences) {
  std::mt19937_64 rng(2024);
  for (const auto &model : kSmooth)
    for (std::size_t n = 3; n <= 8; ++n)
      for (int trial = 0; trial < 5; ++trial) {
        const auto pts = sample_for(model, n, rng);
        EXPECT_LT(central_difference_error(model, pts), 1e-6) << model_name(model) << " n=" << n;
      }
}

TEST(Energies, ModelNames) {
  EXPECT_EQ(model_name(RieszSphere{1.0}), "thomson");
  EXPECT_EQ(model_name(RieszSphere{2.0}), "riesz(p=2)");
  EXPECT_EQ(model_name(TriangleApprox{}), "triangle");
  EXPECT_EQ(default_constraint(LennardJones{}), Constraint::Free);
  EXPECT_EQ(default_constraint(SumSeparation{}), Constraint::UnitSphere);
}

TEST(ThreePoint, EquilateralAndDegenerate) {
  const Vec3 a{0, 0, 0}, b{1, 0, 0}, c{0.5, std::sqrt(3.0) / 2, 0};
  EXPECT_NEAR(three_point_energy(a, b, c), -std::log(9.0 / 8.0), 1e-14);
  EXPECT_DOUBLE_EQ(three_point_energy(a, b, {2, 0, 0}), 0.0);
  EXPECT_THROW(three_point_energy(a, a, b), CoincidentPoints);
}

TEST(ThreePoint, NonPositiveOnRandomTriangles) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 1000; ++t) {
    const auto p = test::random_cloud(3, rng);
    EXPECT_LE(three_point_energy(p[0], p[1], p[2]), 1e-15);
  }
}

TEST(Atiyah, SpinorLiftIsUnit) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const auto s = spinor_lift(test::random_unit(rng));
    EXPECT_NEAR(std::norm(s.u0) + std::norm(s.u1), 1.0, 1e-14);
  }
  const auto south = spinor_lift({0, 0, -1});
  EXPECT_NEAR(std::abs(south.u1), 1.0, 1e-15);
}

TEST(Atiyah, OracleValues) {
  const std::vector<Vec3> four{{0.1, 0.2, 0.3}, {0.5, -0.2, 0.1}, {-0.3, 0.4, 0.7}, {0.2, 0.9, -0.4}};
  EXPECT_NEAR(atiyah_determinant(four).modulus, oracle::kAtiyahFourPoints, 1e-10);
  const std::vector<Vec3> six{{0.3, -0.1, 0.2}, {1.1, 0.4, -0.3}, {-0.6, 0.8, 0.5},
                              {0.2, -0.9, 0.7}, {0.9, 0.9, 0.9},  {-0.4, -0.5, -0.8}};
  EXPECT_NEAR(atiyah_determinant(six).modulus, oracle::kAtiyahSixPoints, 1e-9);
}

TEST(Atiyah, CollinearIsOne) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 5;
    const Vec3 dir = test::random_unit(rng), base = test::random_cloud(1, rng)[0];
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back(base + dir * u(rng));
    EXPECT_NEAR(atiyah_determinant(pts).modulus, 1.0, 1e-9);
  }
}

TEST(Atiyah, EquilateralTriangle) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const std::vector<Vec3> tri{{0, 0, 0}, {1, 0, 0}, {0.5, std::sqrt(3.0) / 2, 0}};
    EXPECT_NEAR(atiyah_determinant(test::random_similarity(tri, rng)).modulus, 9.0 / 8.0, 1e-9);
  }
}

TEST(Atiyah, SimilarityInvariantAndAtLeastOne) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const auto pts = test::random_cloud(2 + t % 9, rng);
    const double d = atiyah_determinant(pts).modulus;
    EXPECT_GE(d, 1.0 - 1e-9);
    EXPECT_NEAR(atiyah_determinant(test::random_similarity(pts, rng)).modulus / d, 1.0, 1e-9);
  }
}

TEST(Atiyah, EnergyIsMinusLogModulus) {
  std::mt19937_64 rng(37);
  const auto pts = test::random_cloud(7, rng);
  const Configuration c(pts, Constraint::Free);
  EXPECT_NEAR(energy(AtiyahDet{}, c), -atiyah_determinant(pts).log_modulus, 1e-12);
  EXPECT_THROW(atiyah_determinant(std::vector<Vec3>{{1, 2, 3}}), InvalidArgument);
}

TEST(Atiyah, PhaseFlagNearPole) {
  const std::vector<Vec3> pts{{0, 0, 0}, {0, 0, 1}, {1, 0, 0}};
  EXPECT_TRUE(atiyah_determinant(pts).phase_unreliable);
  const std::vector<Vec3> generic{{0, 0, 0}, {0.3, 0.2, 1}, {1, 0.4, 0.1}};
  EXPECT_FALSE(atiyah_determinant(generic).phase_unreliable);
}

TEST(Atiyah, TwoPointsHaveZeroEnergyAndGradient) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    const Configuration c(test::random_cloud(2, rng), Constraint::Free);
    EXPECT_NEAR(energy(AtiyahDet{}, c), 0.0, 1e-14);
    for (const Vec3 &g : gradient(AtiyahDet{}, c))
      EXPECT_LT(norm(g), 1e-12);
  }
}
