#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "polyform/atiyah.hpp"
#include "polyform/errors.hpp"
#include "polyform/geometry.hpp"

namespace polyform {

/// Sum over pairs of |x_i - x_j|^{-p}; p = 1 is the Coulomb energy. Also used
/// with the unit-disk constraint for charges confined to a disk.
struct RieszSphere {
  double p = 1.0;
};
/// -sum over pairs of |x_i - x_j| (maximizing the sum of separations).
struct SumSeparation {};
/// -min pair distance; non-smooth, optimized only through `tammes_solve`.
struct MaximinDistance {};
/// Pairwise Coulomb repulsion plus 1/2 |x|^2 confinement per point.
struct CentralCoulomb {};
/// -sum over pairs of |x_i - x_j| plus 1/2 |x|^2 per point.
struct MonopoleLinear {};
/// Reduced Lennard-Jones: sum over pairs of r^-12 - 2 r^-6.
struct LennardJones {};
/// -log |D| of the direction-polynomial determinant.
struct AtiyahDet {};
/// Average over all triangles of -log(3/4 + (cos a + cos b + cos c)/4).
struct TriangleApprox {};

using EnergyModel = std::variant<RieszSphere, SumSeparation, MaximinDistance, CentralCoulomb, MonopoleLinear,
                                 LennardJones, AtiyahDet, TriangleApprox>;

inline std::string model_name(const EnergyModel &model) {
  return std::visit(
      [](const auto &m) -> std::string {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, RieszSphere>) {
          if (m.p == 1.0)
            return "thomson";
          char buf[64];
          std::snprintf(buf, sizeof buf, "riesz(p=%g)", m.p);
          return buf;
        } else if constexpr (std::is_same_v<M, SumSeparation>)
          return "sumsep";
        else if constexpr (std::is_same_v<M, MaximinDistance>)
          return "tammes";
        else if constexpr (std::is_same_v<M, CentralCoulomb>)
          return "central";
        else if constexpr (std::is_same_v<M, MonopoleLinear>)
          return "monopole";
        else if constexpr (std::is_same_v<M, LennardJones>)
          return "lj";
        else if constexpr (std::is_same_v<M, AtiyahDet>)
          return "atiyah";
        else
          return "triangle";
      },
      model);
}

/// Constraint a model is minimized under when none is specified.
inline Constraint default_constraint(const EnergyModel &model) {
  if (std::holds_alternative<RieszSphere>(model) || std::holds_alternative<SumSeparation>(model) ||
      std::holds_alternative<MaximinDistance>(model))
    return Constraint::UnitSphere;
  return Constraint::Free;
}

inline bool accepts(const EnergyModel &model, Constraint c) {
  if (std::holds_alternative<RieszSphere>(model))
    return c == Constraint::UnitSphere || c == Constraint::UnitDisk;
  if (std::holds_alternative<SumSeparation>(model) || std::holds_alternative<MaximinDistance>(model))
    return c == Constraint::UnitSphere;
  if (std::holds_alternative<CentralCoulomb>(model) || std::holds_alternative<MonopoleLinear>(model) ||
      std::holds_alternative<LennardJones>(model))
    return c == Constraint::Free;
  return c == Constraint::Free || c == Constraint::Plane || c == Constraint::UnitSphere;
}

inline bool is_smooth(const EnergyModel &model) { return !std::holds_alternative<MaximinDistance>(model); }

inline std::size_t min_points(const EnergyModel &model) {
  return std::holds_alternative<TriangleApprox>(model) ? 3 : 2;
}

/// -log(3/4 + (cos a + cos b + cos c)/4) for the triangle's interior angles;
/// exactly 0 when the smallest angle is below 1e-12 rad.
inline double three_point_energy(const Vec3 &a, const Vec3 &b, const Vec3 &c);

namespace detail {

/// Pair potentials f(r) with f'(r), accumulated over all pairs.
template <class Pair>
double pair_sum(std::span<const Vec3> pts, std::span<Vec3> grad, Pair &&pair) {
  double e = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Vec3 d = pts[i] - pts[j];
      const double r = norm(d);
      double df = 0.0;
      e += pair(r, df);
      if (!grad.empty()) {
        const Vec3 g = d * (df / r);
        grad[i] += g;
        grad[j] -= g;
      }
    }
  }
  return e;
}

inline double confinement(std::span<const Vec3> pts, std::span<Vec3> grad) {
  double e = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    e += 0.5 * norm2(pts[i]);
    if (!grad.empty())
      grad[i] += pts[i];
  }
  return e;
}

struct TriangleTerm {
  double value = 0.0;
  Vec3 ga, gb, gc;
};

inline TriangleTerm triangle_term(const Vec3 &a, const Vec3 &b, const Vec3 &c, bool with_grad) {
  TriangleTerm t;
  const Vec3 ab = b - a, ac = c - a, bc = c - b;
  auto angle = [](const Vec3 &u, const Vec3 &w) { return std::atan2(norm(cross(u, w)), dot(u, w)); };
  const double min_angle = std::min({angle(ab, ac), angle(-ab, bc), angle(-ac, -bc)});
  if (!(min_angle >= 1e-12))
    return t;
  // d cos(u, w) / du = w / (|u||w|) - cos u / |u|^2
  struct Corner {
    double cos;
    Vec3 du, dw;
  };
  auto corner = [&](const Vec3 &u, const Vec3 &w) {
    const double lu = norm(u), lw = norm(w);
    Corner k;
    k.cos = dot(u, w) / (lu * lw);
    if (with_grad) {
      k.du = w / (lu * lw) - u * (k.cos / (lu * lu));
      k.dw = u / (lu * lw) - w * (k.cos / (lw * lw));
    }
    return k;
  };
  const Corner ka = corner(ab, ac);   // at a: u = b - a, w = c - a
  const Corner kb = corner(-ab, bc);  // at b: u = a - b, w = c - b
  const Corner kc = corner(-ac, -bc); // at c: u = a - c, w = b - c
  const double s = ka.cos + kb.cos + kc.cos;
  t.value = -std::log(0.75 + 0.25 * s);
  if (with_grad) {
    const double dfs = -1.0 / (3.0 + s);
    t.ga = (-(ka.du + ka.dw) + kb.du + kc.du) * dfs;
    t.gb = (ka.du - (kb.du + kb.dw) + kc.dw) * dfs;
    t.gc = (ka.dw + kb.dw - (kc.du + kc.dw)) * dfs;
  }
  return t;
}

/// Energy of `model` at `pts` without validation; fills `grad` when non-empty.
inline double evaluate(const EnergyModel &model, std::span<const Vec3> pts, std::span<Vec3> grad) {
  if (!grad.empty())
    std::fill(grad.begin(), grad.end(), Vec3{});
  return std::visit(
      [&](const auto &m) -> double {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, RieszSphere>) {
          const double p = m.p;
          return pair_sum(pts, grad, [p](double r, double &df) {
            const double e = std::pow(r, -p);
            df = -p * e / r;
            return e;
          });
        } else if constexpr (std::is_same_v<M, SumSeparation>) {
          return pair_sum(pts, grad, [](double r, double &df) {
            df = -1.0;
            return -r;
          });
        } else if constexpr (std::is_same_v<M, MaximinDistance>) {
          if (!grad.empty())
            throw Unsupported("the maximin objective has no gradient");
          return -min_pair_distance(pts);
        } else if constexpr (std::is_same_v<M, CentralCoulomb>) {
          const double e = pair_sum(pts, grad, [](double r, double &df) {
            df = -1.0 / (r * r);
            return 1.0 / r;
          });
          return e + confinement(pts, grad);
        } else if constexpr (std::is_same_v<M, MonopoleLinear>) {
          const double e = pair_sum(pts, grad, [](double r, double &df) {
            df = -1.0;
            return -r;
          });
          return e + confinement(pts, grad);
        } else if constexpr (std::is_same_v<M, LennardJones>) {
          return pair_sum(pts, grad, [](double r, double &df) {
            const double r2 = 1.0 / (r * r);
            const double r6 = r2 * r2 * r2;
            df = (-12.0 * r6 * r6 + 12.0 * r6) / r;
            return r6 * r6 - 2.0 * r6;
          });
        } else if constexpr (std::is_same_v<M, AtiyahDet>) {
          return atiyah_energy(pts, grad);
        } else {
          const std::size_t n = pts.size();
          double sum = 0.0;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
              for (std::size_t k = 0; k < j; ++k) {
                const auto t = triangle_term(pts[i], pts[j], pts[k], !grad.empty());
                sum += t.value;
                if (!grad.empty()) {
                  grad[i] += t.ga;
                  grad[j] += t.gb;
                  grad[k] += t.gc;
                }
              }
          const double triples = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
          if (!grad.empty())
            for (Vec3 &g : grad)
              g /= triples;
          return sum / triples;
        }
      },
      model);
}

inline void validate(const EnergyModel &model, std::span<const Vec3> pts, Constraint c) {
  if (!accepts(model, c))
    throw ConstraintMismatch(model_name(model) + " does not accept the '" + std::string(to_string(c)) +
                             "' constraint");
  if (pts.size() < min_points(model))
    throw InvalidArgument(model_name(model) + " needs at least " + std::to_string(min_points(model)) + " points");
  check_distinct(pts);
}

} // namespace detail

/// Energy of a configuration under `model`.
inline double energy(const EnergyModel &model, const Configuration &config) {
  detail::validate(model, config.points(), config.constraint());
  return detail::evaluate(model, config.points(), {});
}

/// Exact gradient with respect to every coordinate, before any constraint projection.
inline std::vector<Vec3> gradient(const EnergyModel &model, const Configuration &config) {
  if (!is_smooth(model))
    throw Unsupported("the maximin objective has no gradient");
  detail::validate(model, config.points(), config.constraint());
  std::vector<Vec3> g(config.size());
  detail::evaluate(model, config.points(), g);
  return g;
}

inline double three_point_energy(const Vec3 &a, const Vec3 &b, const Vec3 &c) {
  if (distance(a, b) < kCoincidenceTolerance || distance(a, c) < kCoincidenceTolerance ||
      distance(b, c) < kCoincidenceTolerance)
    throw CoincidentPoints("three_point_energy: coincident points");
  return detail::triangle_term(a, b, c, false).value;
}

} // namespace polyform
