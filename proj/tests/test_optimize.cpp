#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "polyform/io.hpp"
#include "polyform/shells.hpp"
#include "polyform/tammes.hpp"
#include "test_support.hpp"

using namespace polyform;

namespace {

OptimizerSettings quick(std::uint64_t seed = 42, int starts = 20) {
  OptimizerSettings s;
  s.seed = seed;
  s.start_count = starts;
  return s;
}

} // namespace

TEST(Retraction, StaysOnManifold) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const Vec3 x = test::random_unit(rng), d = test::random_cloud(1, rng)[0];
    Vec3 out, vel;
    detail::retract(x, detail::project_gradient(x, d, Constraint::UnitSphere), 0.7, Constraint::UnitSphere, out,
                    vel);
    EXPECT_NEAR(norm(out), 1.0, 1e-14);

    Vec3 disk_x{0.3, -0.2, 0.0};
    detail::retract(disk_x, {5.0, 1.0, 0.0}, 1.0, Constraint::UnitDisk, out, vel);
    EXPECT_LE(norm(out), 1.0 + 1e-15);
    EXPECT_EQ(out.z, 0.0);
  }
}

TEST(LocalMinimize, ReachesOracleEnergies) {
  std::mt19937_64 rng(8);
  const Configuration five(test::random_sphere(5, rng), Constraint::UnitSphere);
  const auto run = local_minimize(RieszSphere{1.0}, five, quick());
  EXPECT_TRUE(run.converged);
  EXPECT_LE(run.best_energy, run.start_energy);
  EXPECT_FALSE(run.best.violation().has_value());
  // the square pyramid is a saddle, so a random start ends on the bipyramid
  EXPECT_NEAR(run.best_energy, oracle::kThomson5, 1e-9);
}

TEST(LocalMinimize, RejectsBadInput) {
  const Configuration free({{0, 0, 0}, {1, 0, 0}}, Constraint::Free);
  EXPECT_THROW(local_minimize(RieszSphere{1.0}, free), ConstraintMismatch);
  EXPECT_THROW(local_minimize(MaximinDistance{}, platonic(PlatonicKind::Octahedron)), Unsupported);
  const Configuration dup({{0, 0, 0}, {0, 0, 0}}, Constraint::Free);
  EXPECT_THROW(local_minimize(LennardJones{}, dup), CoincidentPoints);
}

TEST(MultiStart, ThomsonSmallN) {
  const auto s = quick();
  EXPECT_NEAR(multi_start(RieszSphere{1.0}, 5, s).best_energy, oracle::kThomson5, 1e-9);
  EXPECT_NEAR(multi_start(RieszSphere{1.0}, 6, s).best_energy, oracle::kThomson6, 1e-9);
  EXPECT_THROW(multi_start(RieszSphere{1.0}, 1, s), InvalidArgument);
}

TEST(MultiStart, CentralAndMonopoleOracles) {
  const auto s = quick();
  const auto c2 = multi_start(CentralCoulomb{}, 2, s);
  EXPECT_NEAR(radial_profile(c2.best.points()).mean, oracle::kCentral2Radius, 1e-6);
  const auto m2 = multi_start(MonopoleLinear{}, 2, s);
  EXPECT_NEAR(distance(m2.best[0], m2.best[1]), oracle::kMonopole2Separation, 1e-6);
  const auto c13 = multi_start(CentralCoulomb{}, 13, s);
  EXPECT_NEAR(c13.best_energy, oracle::kCentral13, 1e-7);
}

TEST(MultiStart, LennardJones13IsMackay) {
  const auto run = multi_start(LennardJones{}, 13, quick());
  EXPECT_NEAR(run.best_energy, oracle::kLennardJones13, 1e-7);
  EXPECT_EQ(shell_decomposition(run.best).sizes(), (std::vector<std::size_t>{1, 12}));
}

TEST(MultiStart, DiskConstraint) {
  const auto run = multi_start(RieszSphere{1.0}, 3, quick(), Constraint::UnitDisk);
  EXPECT_FALSE(run.best.violation().has_value());
  for (const Vec3 &p : run.best.points())
    EXPECT_NEAR(norm(p), 1.0, 1e-9);
}

TEST(MultiStart, CensusCountsAddUp) {
  const auto run = multi_start(LennardJones{}, 8, quick(7, 60));
  std::size_t total = 0;
  for (const auto &e : run.census)
    total += e.count;
  EXPECT_EQ(total, run.starts_completed);
  EXPECT_GE(distinct_minima(run), 1u);
  EXPECT_DOUBLE_EQ(run.census.front().energy, run.best_energy);
}

TEST(MultiStart, ThreadCountDoesNotChangeResult) {
  auto one = quick(99, 40);
  one.threads = 1;
  auto four = one;
  four.threads = 4;
  const auto a = run_to_json(multi_start(LennardJones{}, 11, one));
  const auto b = run_to_json(multi_start(LennardJones{}, 11, four));
  // settings.threads is not serialized, so the records must be identical
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(MultiStart, SameSeedSameRecord) {
  const auto a = run_to_json(multi_start(RieszSphere{1.0}, 9, quick(5)));
  const auto b = run_to_json(multi_start(RieszSphere{1.0}, 9, quick(5)));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(MultiStart, NonConvergedIsFlagged) {
  auto s = quick(1, 3);
  s.max_iterations = 2;
  s.structured_seeds = false;
  const auto run = multi_start(LennardJones{}, 20, s);
  EXPECT_FALSE(run.converged);
  EXPECT_TRUE(std::isfinite(run.best_energy));
}

TEST(Tammes, KnownOptima) {
  const auto s = quick(42, 10);
  const auto six = tammes_solve(6, s);
  EXPECT_NEAR(six.min_distance, oracle::kTammes6, 1e-6);
  EXPECT_DOUBLE_EQ(six.best_energy, -six.min_distance);
  EXPECT_NEAR(tammes_solve(12, s).min_distance, oracle::kIcosahedronEdge, 1e-6);
  EXPECT_THROW(tammes_solve(1, s), InvalidArgument);
}

TEST(Json, RunRoundTrip) {
  const auto run = multi_start(RieszSphere{1.0}, 6, quick());
  const auto j = run_to_json(run);
  const auto back = run_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.best, run.best);
  EXPECT_EQ(back.best_energy, run.best_energy);
  EXPECT_EQ(back.census.size(), run.census.size());
  EXPECT_EQ(run_to_json(back).at("best").dump(), j.at("best").dump());
}

TEST(Json, SettingsRoundTrip) {
  OptimizerSettings s;
  s.seed = 123;
  s.start_count = 7;
  s.gradient_tolerance = 1e-8;
  s.shell_seeds = false;
  const auto back = settings_from_json(settings_to_json(s));
  EXPECT_EQ(back.seed, 123u);
  EXPECT_EQ(back.start_count, 7);
  EXPECT_EQ(back.gradient_tolerance, 1e-8);
  EXPECT_FALSE(back.shell_seeds);
}
