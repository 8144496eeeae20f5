#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "polyform/geometry.hpp"
#include "polyform/hull.hpp"
#include "polyform/signature.hpp"

namespace polyform {

// ---------------------------------------------------------------------------
// bounds and estimates

/// Sum-of-separations lower bound: E_{-1} > 1/2 - (2/3) n^2.
inline double toth_lower_bound(int n) {
  if (n < 2)
    throw InvalidArgument("toth_lower_bound needs n >= 2");
  return 0.5 - 2.0 / 3.0 * n * static_cast<double>(n);
}

/// Packing bound for the central configuration energy: E >= 0.9 n (n^{2/3} - 1).
inline double central_lower_bound(int n) {
  if (n < 1)
    throw InvalidArgument("central_lower_bound needs n >= 1");
  return 0.9 * n * (std::pow(static_cast<double>(n), 2.0 / 3.0) - 1.0);
}

struct MonopoleEstimate {
  double radius = 0.0;
  double energy = 0.0;
};

/// Asymptotic radius 2n/3 - 1/(2n) and energy -(2/9) n^3 + n/3 - 1/8.
inline MonopoleEstimate monopole_estimates(int n) {
  if (n < 2)
    throw InvalidArgument("monopole_estimates needs n >= 2");
  const double x = n;
  return {2.0 * x / 3.0 - 1.0 / (2.0 * x), -2.0 / 9.0 * x * x * x + x / 3.0 - 0.125};
}

inline constexpr double kGeomFitA = 0.143;
inline constexpr double kGeomFitB = 0.792;

/// Quadratic fit to the minimal determinant energy: -a n^2 + b n + 4a - 2b.
inline double geom_energy_fit(int n) {
  if (n < 2)
    throw InvalidArgument("geom_energy_fit needs n >= 2");
  const double x = n;
  return -kGeomFitA * x * x + kGeomFitB * x + 4.0 * kGeomFitA - 2.0 * kGeomFitB;
}

enum class BoundSense {
  StrictlyAbove, ///< measured > bound
  Above,         ///< measured >= bound
  Within,        ///< |measured - bound| <= tolerance * |bound|
};

struct BoundReport {
  std::string name;
  int n = 0;
  double bound = 0.0;
  double measured = 0.0;
  bool satisfied = false;
  /// (measured - bound) / |bound|; 0 when the bound is 0.
  double relative_gap = 0.0;
};

inline BoundReport make_bound_report(std::string name, int n, double bound, double measured, BoundSense sense,
                                     double tolerance = 0.0) {
  BoundReport r{std::move(name), n, bound, measured, false, 0.0};
  r.relative_gap = bound != 0.0 ? (measured - bound) / std::abs(bound) : 0.0;
  switch (sense) {
  case BoundSense::StrictlyAbove:
    r.satisfied = measured > bound;
    break;
  case BoundSense::Above:
    r.satisfied = measured >= bound;
    break;
  case BoundSense::Within:
    r.satisfied = std::abs(measured - bound) <= tolerance * std::abs(bound);
    break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// structural checks

struct FullereneReport {
  bool is_trivalent = false;
  std::size_t pentagons = 0;
  std::size_t hexagons = 0;
  std::size_t other_faces = 0;
  std::size_t V = 0, F = 0, E = 0;
  bool identities_hold = false;
};

inline FullereneReport validate_fullerene(const Polyhedron &poly) {
  FullereneReport r;
  r.V = poly.vertices.size();
  r.F = poly.faces.size();
  r.E = poly.edge_count();
  const auto degrees = poly.vertex_degrees();
  r.is_trivalent = !degrees.empty() && std::all_of(degrees.begin(), degrees.end(), [](int d) { return d == 3; });
  for (const auto &f : poly.faces) {
    if (f.size() == 5)
      ++r.pentagons;
    else if (f.size() == 6)
      ++r.hexagons;
    else
      ++r.other_faces;
  }
  r.identities_hold = r.is_trivalent && r.pentagons == 12 && r.other_faces == 0 && r.V + 4 == 2 * r.F &&
                      r.E + 6 == 3 * r.F;
  return r;
}

struct DeltahedronCensus {
  bool is_deltahedron = false;
  std::size_t pentamers = 0;
  std::size_t hexamers = 0;
  std::size_t others = 0;
};

/// Triangular-face check plus the vertex-degree census (degree 5 / 6 / other).
inline DeltahedronCensus deltahedron_census(const Polyhedron &poly) {
  DeltahedronCensus c;
  c.is_deltahedron = !poly.faces.empty() &&
                     std::all_of(poly.faces.begin(), poly.faces.end(), [](const auto &f) { return f.size() == 3; });
  for (int d : poly.vertex_degrees()) {
    if (d == 5)
      ++c.pentamers;
    else if (d == 6)
      ++c.hexamers;
    else
      ++c.others;
  }
  return c;
}

inline bool compare_combinatorics(const Polyhedron &a, const Polyhedron &b, bool dualize_b = false) {
  return combinatorial_signature(a) == combinatorial_signature(dualize_b ? dual(b) : b);
}

// ---------------------------------------------------------------------------
// radial statistics

struct RadialProfile {
  double mean = 0.0;
  /// max_i |r_i - mean| / mean
  double max_relative_deviation = 0.0;
};

/// Distances from the centroid (`about_centroid`) or from the origin.
inline RadialProfile radial_profile(std::span<const Vec3> pts, bool about_centroid = true) {
  RadialProfile p;
  if (pts.empty())
    return p;
  const Vec3 c = about_centroid ? centroid(pts) : Vec3{};
  std::vector<double> r;
  for (const Vec3 &x : pts)
    r.push_back(distance(x, c));
  for (double v : r)
    p.mean += v;
  p.mean /= static_cast<double>(r.size());
  for (double v : r)
    p.max_relative_deviation = std::max(p.max_relative_deviation, std::abs(v - p.mean) / p.mean);
  return p;
}

// ---------------------------------------------------------------------------
// optimal alignment

/// Minimum-cost perfect matching (Hungarian method, O(n^3)); returns
/// assignment[i] = column matched to row i.
inline std::vector<std::size_t> hungarian(const std::vector<std::vector<double>> &cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1), v(n + 1);
  std::vector<std::size_t> p(n + 1), way(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j])
          continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= n; ++j)
    assignment[p[j] - 1] = j - 1;
  return assignment;
}

struct Alignment {
  /// assignment[i]: index in b matched to point i of a
  std::vector<std::size_t> assignment;
  /// Orthogonal map (possibly improper) applied to the normalized a.
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  double rms = 0.0;
  /// Largest matched-point distance divided by the diameter of normalized b.
  double max_relative_deviation = 0.0;
};

namespace detail {

inline Eigen::Matrix3d procrustes(const std::vector<Vec3> &a, const std::vector<Vec3> &b,
                                  const std::vector<std::size_t> &assign) {
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec3 &p = a[i], &q = b[assign[i]];
    h += Eigen::Vector3d(q.x, q.y, q.z) * Eigen::Vector3d(p.x, p.y, p.z).transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

inline Vec3 apply(const Eigen::Matrix3d &m, const Vec3 &p) {
  const Eigen::Vector3d r = m * Eigen::Vector3d(p.x, p.y, p.z);
  return {r.x(), r.y(), r.z()};
}

inline Eigen::Matrix3d frame(const Vec3 &p, const Vec3 &q) {
  const Vec3 u = normalized(p);
  const Vec3 v = normalized(q - u * dot(u, q));
  const Vec3 w = cross(u, v);
  Eigen::Matrix3d f;
  f << u.x, v.x, w.x, u.y, v.y, w.y, u.z, v.z, w.z;
  return f;
}

} // namespace detail

/// Best rigid alignment of `a` onto `b` up to reflection and relabeling:
/// both are centred and scaled to unit RMS radius, then rotation (orthogonal
/// Procrustes) and assignment (Hungarian) are alternated from every start
/// that maps a fixed anchor pair of `a` onto a pair of `b`.
inline Alignment align_configurations(std::span<const Vec3> a_raw, std::span<const Vec3> b_raw) {
  if (a_raw.size() != b_raw.size() || a_raw.empty())
    throw InvalidArgument("align_configurations needs two non-empty sets of equal size");
  const auto a = normalized_cloud(a_raw);
  const auto b = normalized_cloud(b_raw);
  const std::size_t n = a.size();
  Alignment best;
  best.rms = std::numeric_limits<double>::infinity();

  auto refine = [&](Eigen::Matrix3d r) {
    std::vector<std::size_t> assign;
    double rms = std::numeric_limits<double>::infinity();
    for (int iter = 0; iter < 50; ++iter) {
      std::vector<std::vector<double>> cost(n, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const Vec3 p = detail::apply(r, a[i]);
        for (std::size_t j = 0; j < n; ++j)
          cost[i][j] = norm2(p - b[j]);
      }
      auto next = hungarian(cost);
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        total += cost[i][next[i]];
      const double next_rms = std::sqrt(total / static_cast<double>(n));
      const bool stable = next == assign;
      assign = std::move(next);
      rms = next_rms;
      r = detail::procrustes(a, b, assign);
      if (stable)
        break;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      total += norm2(detail::apply(r, a[i]) - b[assign[i]]);
    rms = std::min(rms, std::sqrt(total / static_cast<double>(n)));
    if (rms < best.rms - 1e-15) {
      best.rms = rms;
      best.rotation = r;
      best.assignment = assign;
    }
  };

  // anchors: farthest point from the centre, then the one most off its line
  std::size_t i0 = 0, i1 = n > 1 ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i)
    if (norm(a[i]) > norm(a[i0]))
      i0 = i;
  double spread = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = norm(cross(a[i0], a[i]));
    if (i != i0 && s > spread) {
      spread = s;
      i1 = i;
    }
  }
  if (n < 3 || spread < 1e-9 || norm(a[i0]) < 1e-9) {
    refine(Eigen::Matrix3d::Identity());
    refine(-Eigen::Matrix3d::Identity());
  } else {
    const Eigen::Matrix3d fa = detail::frame(a[i0], a[i1]);
    const double r0 = norm(a[i0]), r1 = norm(a[i1]), d01 = distance(a[i0], a[i1]);
    Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
    flip(2, 2) = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(norm(b[j]) - r0) > 0.2)
        continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j || std::abs(norm(b[k]) - r1) > 0.2 || std::abs(distance(b[j], b[k]) - d01) > 0.2)
          continue;
        if (norm(cross(b[j], b[k])) < 1e-9)
          continue;
        const Eigen::Matrix3d fb = detail::frame(b[j], b[k]);
        refine(fb * fa.transpose());
        refine(fb * flip * fa.transpose());
      }
    }
    if (best.assignment.empty()) {
      refine(Eigen::Matrix3d::Identity());
      refine(-Eigen::Matrix3d::Identity());
    }
  }
  const double diameter = max_pair_distance(b);
  for (std::size_t i = 0; i < n; ++i)
    best.max_relative_deviation =
        std::max(best.max_relative_deviation,
                 distance(detail::apply(best.rotation, a[i]), b[best.assignment[i]]) / std::max(diameter, 1e-300));
  return best;
}

inline Alignment align_configurations(const Configuration &a, const Configuration &b) {
  return align_configurations(a.points(), b.points());
}

} // namespace polyform
