#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Geometry>

#include "polyform/geometry.hpp"

namespace test {

using polyform::Vec3;

inline std::vector<Vec3> points_of(const polyform::Configuration &c) { return {c.points().begin(), c.points().end()}; }

inline Vec3 random_unit(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  for (;;) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    const double r = polyform::norm(v);
    if (r > 1e-6)
      return v / r;
  }
}

inline std::vector<Vec3> random_sphere(std::size_t n, std::mt19937_64 &rng) {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(random_unit(rng));
  return out;
}

inline std::vector<Vec3> random_cloud(std::size_t n, std::mt19937_64 &rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({u(rng), u(rng), u(rng)});
  return out;
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return q.toRotationMatrix();
}

inline Vec3 apply(const Eigen::Matrix3d &m, const Vec3 &p) {
  const Eigen::Vector3d r = m * Eigen::Vector3d(p.x, p.y, p.z);
  return {r.x(), r.y(), r.z()};
}

inline std::vector<Vec3> rotate(const std::vector<Vec3> &pts, const Eigen::Matrix3d &m) {
  std::vector<Vec3> out;
  for (const Vec3 &p : pts)
    out.push_back(apply(m, p));
  return out;
}

/// Random rotation, uniform scale in [0.5, 2] and translation.
inline std::vector<Vec3> random_similarity(const std::vector<Vec3> &pts, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> scale(0.5, 2.0), shift(-3.0, 3.0);
  const auto m = random_rotation(rng);
  const double s = scale(rng);
  const Vec3 t{shift(rng), shift(rng), shift(rng)};
  std::vector<Vec3> out;
  for (const Vec3 &p : pts)
    out.push_back(apply(m, p) * s + t);
  return out;
}

} // namespace test
