#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "polyform/geometry.hpp"
#include "polyform/hull.hpp"

namespace polyform {

enum class PlatonicKind { Tetrahedron, Octahedron, Cube, Icosahedron, Dodecahedron };

inline std::optional<PlatonicKind> parse_platonic(std::string_view s) {
  if (s == "tetrahedron")
    return PlatonicKind::Tetrahedron;
  if (s == "octahedron")
    return PlatonicKind::Octahedron;
  if (s == "cube")
    return PlatonicKind::Cube;
  if (s == "icosahedron")
    return PlatonicKind::Icosahedron;
  if (s == "dodecahedron")
    return PlatonicKind::Dodecahedron;
  return std::nullopt;
}

namespace detail {

inline std::vector<Vec3> on_unit_sphere(std::vector<Vec3> pts) {
  for (Vec3 &p : pts)
    p = normalized(p);
  return pts;
}

inline std::vector<Vec3> icosahedron_raw() {
  constexpr double phi = std::numbers::phi;
  std::vector<Vec3> v;
  for (double a : {-1.0, 1.0})
    for (double b : {-phi, phi}) {
      v.push_back({0, a, b});
      v.push_back({a, b, 0});
      v.push_back({b, 0, a});
    }
  return v;
}

/// Edges and faces of the raw icosahedron by adjacency (edge length 2).
inline void icosahedron_topology(const std::vector<Vec3> &v, std::vector<std::array<int, 2>> &edges,
                                 std::vector<std::array<int, 3>> &faces) {
  const int n = static_cast<int>(v.size());
  auto adjacent = [&](int i, int j) { return std::abs(distance(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]) - 2.0) < 1e-9; };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adjacent(i, j)) {
        edges.push_back({i, j});
        for (int k = j + 1; k < n; ++k)
          if (adjacent(i, k) && adjacent(j, k))
            faces.push_back({i, j, k});
      }
}

} // namespace detail

/// Vertices of a Platonic solid on the unit sphere, centred at the origin.
inline Configuration platonic(PlatonicKind kind) {
  std::vector<Vec3> v;
  switch (kind) {
  case PlatonicKind::Tetrahedron:
    v = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    break;
  case PlatonicKind::Octahedron:
    v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    break;
  case PlatonicKind::Cube:
    for (double a : {-1.0, 1.0})
      for (double b : {-1.0, 1.0})
        for (double c : {-1.0, 1.0})
          v.push_back({a, b, c});
    break;
  case PlatonicKind::Icosahedron:
    v = detail::icosahedron_raw();
    break;
  case PlatonicKind::Dodecahedron: {
    constexpr double phi = std::numbers::phi;
    for (double a : {-1.0, 1.0})
      for (double b : {-1.0, 1.0})
        for (double c : {-1.0, 1.0})
          v.push_back({a, b, c});
    for (double a : {-1.0, 1.0})
      for (double b : {-1.0, 1.0}) {
        v.push_back({0, a / phi, b * phi});
        v.push_back({a / phi, b * phi, 0});
        v.push_back({b * phi, 0, a / phi});
      }
    break;
  }
  }
  return {detail::on_unit_sphere(std::move(v)), Constraint::UnitSphere};
}

/// Centre point plus complete icosahedral shells s = 1..shell_count, each
/// holding 10 s^2 + 2 points; scaled so the nearest-neighbour distance is 1.
inline Configuration mackay_icosahedron(int shell_count) {
  if (shell_count < 0)
    throw InvalidArgument("mackay_icosahedron: shell_count must be >= 0");
  const auto ico = detail::icosahedron_raw();
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> faces;
  detail::icosahedron_topology(ico, edges, faces);
  // raw icosahedron has edge 2 and circumradius |(0,1,phi)|; centre-vertex distance becomes 1
  const double unit = 1.0 / norm(ico.front());

  std::vector<Vec3> pts{{0, 0, 0}};
  for (int s = 1; s <= shell_count; ++s) {
    const double scale = unit * s;
    auto at = [&](int i) { return ico[static_cast<std::size_t>(i)] * scale; };
    for (std::size_t i = 0; i < ico.size(); ++i)
      pts.push_back(at(static_cast<int>(i)));
    for (auto [a, b] : edges)
      for (int k = 1; k < s; ++k)
        pts.push_back(at(a) + (at(b) - at(a)) * (static_cast<double>(k) / s));
    for (auto [a, b, c] : faces)
      for (int i = 1; i < s; ++i)
        for (int j = 1; i + j < s; ++j)
          pts.push_back(at(a) + (at(b) - at(a)) * (static_cast<double>(i) / s) +
                        (at(c) - at(a)) * (static_cast<double>(j) / s));
  }
  return {std::move(pts), Constraint::Free};
}

/// Expected Mackay point count 1 + sum_{k=1..s} (10 k^2 + 2).
constexpr int mackay_count(int shell_count) {
  int total = 1;
  for (int k = 1; k <= shell_count; ++k)
    total += 10 * k * k + 2;
  return total;
}

/// Truncated icosahedron (12 pentagons, 20 hexagons) inscribed in the unit sphere.
inline Polyhedron truncated_icosahedron() {
  const auto ico = detail::icosahedron_raw();
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> faces;
  detail::icosahedron_topology(ico, edges, faces);
  std::vector<Vec3> pts;
  for (auto [a, b] : edges) {
    const Vec3 pa = ico[static_cast<std::size_t>(a)];
    const Vec3 pb = ico[static_cast<std::size_t>(b)];
    pts.push_back(pa + (pb - pa) / 3.0);
    pts.push_back(pa + (pb - pa) * (2.0 / 3.0));
  }
  const double r = norm(pts.front());
  for (Vec3 &p : pts)
    p /= r;
  return convex_hull(pts);
}

/// Regular k-gon of unit circumradius in the z = 0 plane, starting at angle `phase`.
inline std::vector<Vec3> regular_polygon(int k, double radius = 1.0, double z = 0.0, double phase = 0.0) {
  std::vector<Vec3> v;
  for (int i = 0; i < k; ++i) {
    const double t = phase + 2.0 * std::numbers::pi * i / k;
    v.push_back({radius * std::cos(t), radius * std::sin(t), z});
  }
  return v;
}

/// Square antiprism with all vertices on the unit sphere and unit-sphere equal edges.
inline Configuration square_antiprism(double height) {
  const double rho = std::sqrt(1.0 - height * height);
  auto top = regular_polygon(4, rho, height);
  auto bottom = regular_polygon(4, rho, -height, std::numbers::pi / 4.0);
  top.insert(top.end(), bottom.begin(), bottom.end());
  return {std::move(top), Constraint::UnitSphere};
}

/// Bipyramid over a regular k-gon on the unit sphere (poles at +-z).
inline Configuration bipyramid(int k) {
  auto v = regular_polygon(k);
  v.push_back({0, 0, 1});
  v.push_back({0, 0, -1});
  return {std::move(v), Constraint::UnitSphere};
}

} // namespace polyform
