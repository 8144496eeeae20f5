#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyform/errors.hpp"

namespace polyform {

/// A point (or displacement) in 3-space, in dimensionless model units.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 &operator+=(const Vec3 &o) noexcept {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3 &operator-=(const Vec3 &o) noexcept {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3 &operator*=(double s) noexcept {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr Vec3 &operator/=(double s) noexcept {
    x /= s;
    y /= s;
    z /= s;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3 &b) noexcept { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3 &b) noexcept { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return a *= s; }
  friend constexpr Vec3 operator/(Vec3 a, double s) noexcept { return a /= s; }
  friend constexpr Vec3 operator-(const Vec3 &a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

using Point3 = Vec3;

constexpr double dot(const Vec3 &a, const Vec3 &b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3 &a, const Vec3 &b) noexcept {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
constexpr double norm2(const Vec3 &a) noexcept { return dot(a, a); }
inline double norm(const Vec3 &a) noexcept { return std::sqrt(norm2(a)); }
inline double distance(const Vec3 &a, const Vec3 &b) noexcept { return norm(a - b); }
inline Vec3 normalized(const Vec3 &a) noexcept { return a / norm(a); }
inline bool is_finite(const Vec3 &a) noexcept {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Where the points of a configuration are allowed to live.
enum class Constraint { UnitSphere, Free, Plane, UnitDisk };

inline std::string_view to_string(Constraint c) noexcept {
  switch (c) {
  case Constraint::UnitSphere:
    return "sphere";
  case Constraint::Free:
    return "free";
  case Constraint::Plane:
    return "plane";
  case Constraint::UnitDisk:
    return "disk";
  }
  return "free";
}

inline std::optional<Constraint> parse_constraint(std::string_view s) noexcept {
  if (s == "sphere" || s == "UnitSphere")
    return Constraint::UnitSphere;
  if (s == "free" || s == "Free")
    return Constraint::Free;
  if (s == "plane" || s == "Plane")
    return Constraint::Plane;
  if (s == "disk" || s == "UnitDisk")
    return Constraint::UnitDisk;
  return std::nullopt;
}

inline constexpr double kSphereTolerance = 1e-12;
inline constexpr double kCoincidenceTolerance = 1e-12;

/// Ordered list of labeled points plus the constraint they satisfy.
///
/// The plain constructor does not validate; use `Configuration::checked` when
/// the input comes from outside the library.
class Configuration {
public:
  Configuration() = default;
  Configuration(std::vector<Vec3> points, Constraint constraint)
      : points_(std::move(points)), constraint_(constraint) {}

  /// Builds a configuration and verifies every invariant of its constraint.
  static Configuration checked(std::vector<Vec3> points, Constraint constraint) {
    Configuration c(std::move(points), constraint);
    if (auto why = c.violation())
      throw InvalidArgument("invalid configuration: " + *why);
    return c;
  }

  /// Describes the first violated invariant, if any.
  std::optional<std::string> violation() const {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const Vec3 &p = points_[i];
      if (!is_finite(p))
        return "point " + std::to_string(i) + " is not finite";
      switch (constraint_) {
      case Constraint::UnitSphere:
        if (std::abs(norm(p) - 1.0) > kSphereTolerance)
          return "point " + std::to_string(i) + " is off the unit sphere";
        break;
      case Constraint::Plane:
        if (p.z != 0.0)
          return "point " + std::to_string(i) + " has z != 0";
        break;
      case Constraint::UnitDisk:
        if (p.z != 0.0)
          return "point " + std::to_string(i) + " has z != 0";
        if (norm(p) > 1.0 + kSphereTolerance)
          return "point " + std::to_string(i) + " lies outside the unit disk";
        break;
      case Constraint::Free:
        break;
      }
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (distance(points_[i], points_[j]) <= 0.0)
          return "points " + std::to_string(j) + " and " + std::to_string(i) + " coincide";
    return std::nullopt;
  }

  std::span<const Vec3> points() const noexcept { return points_; }
  std::span<Vec3> points() noexcept { return points_; }
  std::vector<Vec3> &mutable_points() noexcept { return points_; }
  Constraint constraint() const noexcept { return constraint_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Vec3 &operator[](std::size_t i) const noexcept { return points_[i]; }

  friend bool operator==(const Configuration &, const Configuration &) = default;

private:
  std::vector<Vec3> points_;
  Constraint constraint_ = Constraint::Free;
};

inline Vec3 centroid(std::span<const Vec3> pts) noexcept {
  Vec3 c;
  for (const Vec3 &p : pts)
    c += p;
  return pts.empty() ? c : c / static_cast<double>(pts.size());
}

/// Root-mean-square distance from the centroid.
inline double rms_radius(std::span<const Vec3> pts) noexcept {
  if (pts.empty())
    return 0.0;
  const Vec3 c = centroid(pts);
  double s = 0.0;
  for (const Vec3 &p : pts)
    s += norm2(p - c);
  return std::sqrt(s / static_cast<double>(pts.size()));
}

inline double min_pair_distance(std::span<const Vec3> pts) noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      best = std::min(best, distance(pts[i], pts[j]));
  return best;
}

inline double min_pair_distance(const Configuration &c) noexcept { return min_pair_distance(c.points()); }

inline double max_pair_distance(std::span<const Vec3> pts) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      best = std::max(best, distance(pts[i], pts[j]));
  return best;
}

/// Translates to the centroid and rescales to unit RMS radius.
inline std::vector<Vec3> normalized_cloud(std::span<const Vec3> pts) {
  const Vec3 c = centroid(pts);
  const double r = rms_radius(pts);
  std::vector<Vec3> out;
  out.reserve(pts.size());
  for (const Vec3 &p : pts)
    out.push_back(r > 0.0 ? (p - c) / r : p - c);
  return out;
}

/// True when every point lies within `tol` of the line through the first two distinct points.
inline bool is_collinear(std::span<const Vec3> pts, double tol) noexcept {
  if (pts.size() < 3)
    return true;
  const Vec3 a = pts[0];
  std::size_t k = 1;
  while (k < pts.size() && distance(pts[k], a) <= tol)
    ++k;
  if (k == pts.size())
    return true;
  const Vec3 u = normalized(pts[k] - a);
  for (const Vec3 &p : pts)
    if (norm(cross(p - a, u)) > tol)
      return false;
  return true;
}

} // namespace polyform
