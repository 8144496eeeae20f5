#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "polyform/errors.hpp"
#include "polyform/geometry.hpp"

namespace polyform {

using Complex = std::complex<double>;

/// Unit spinor (u0, u1) with |u0|^2 + |u1|^2 = 1 lifting a direction on S^2.
struct SpinorFactor {
  Complex u0;
  Complex u1;
};

/// Lifts a unit direction v = (sin t cos f, sin t sin f, cos t) to
/// (cos(t/2), e^{if} sin(t/2)); below the equator the equivalent gauge
/// (e^{-if} cos(t/2), sin(t/2)) is used so both charts stay regular.
inline SpinorFactor spinor_lift(const Vec3 &v) {
  if (v.z >= 0.0) {
    const double s = std::sqrt(2.0 * (1.0 + v.z));
    return {Complex(0.5 * s, 0.0), Complex(v.x, v.y) / s};
  }
  const double s = std::sqrt(2.0 * (1.0 - v.z));
  return {Complex(v.x, -v.y) / s, Complex(0.5 * s, 0.0)};
}

struct AtiyahDeterminant {
  double modulus = 1.0;
  double log_modulus = 0.0;
  double phase = 0.0;
  /// The phase of D depends on the spinor gauge; set when some direction sits
  /// within 1e-8 of a chart pole, where even the gauge is ill-conditioned.
  bool phase_unreliable = false;
};

namespace detail {

inline void check_distinct(std::span<const Vec3> pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (distance(pts[i], pts[j]) < kCoincidenceTolerance)
        throw CoincidentPoints("points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
}

/// Coefficient matrix: row i holds the coefficients (ascending powers of t) of
/// prod_{j != i} (u0_ij t - u1_ij).
inline Eigen::MatrixXcd atiyah_matrix(std::span<const Vec3> pts, bool *near_pole = nullptr) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  std::vector<Complex> poly(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    std::fill(poly.begin(), poly.end(), Complex(0.0));
    poly[0] = 1.0;
    std::size_t degree = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i)
        continue;
      const Vec3 v = normalized(pts[static_cast<std::size_t>(j)] - pts[static_cast<std::size_t>(i)]);
      if (near_pole && 1.0 - std::abs(v.z) < 1e-8)
        *near_pole = true;
      const SpinorFactor s = spinor_lift(v);
      // multiply by (-u1 + u0 t)
      for (std::size_t k = degree + 2; k-- > 0;) {
        const Complex lower = k > 0 ? poly[k - 1] : Complex(0.0);
        poly[k] = -s.u1 * poly[k] + s.u0 * lower;
      }
      ++degree;
    }
    for (Eigen::Index k = 0; k < n; ++k)
      m(i, k) = poly[static_cast<std::size_t>(k)];
  }
  return m;
}

} // namespace detail

/// |det d| for the coefficient matrix of the direction polynomials; the log
/// modulus is accumulated from the LU diagonal so large n does not overflow.
inline AtiyahDeterminant atiyah_determinant(std::span<const Vec3> pts) {
  if (pts.size() < 2)
    throw InvalidArgument("atiyah_determinant needs at least 2 points");
  detail::check_distinct(pts);
  AtiyahDeterminant out;
  const auto m = detail::atiyah_matrix(pts, &out.phase_unreliable);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const auto &packed = lu.matrixLU();
  double log_mod = 0.0;
  double phase = std::arg(Complex(lu.permutationP().determinant(), 0.0));
  for (Eigen::Index k = 0; k < packed.rows(); ++k) {
    log_mod += std::log(std::abs(packed(k, k)));
    phase += std::arg(packed(k, k));
  }
  out.log_modulus = log_mod;
  out.modulus = std::exp(log_mod);
  out.phase = std::remainder(phase, 2.0 * std::numbers::pi);
  return out;
}

inline AtiyahDeterminant atiyah_determinant(const Configuration &c) { return atiyah_determinant(c.points()); }

namespace detail {

/// -log|D| and, when `grad` is non-empty, its gradient with respect to every
/// coordinate. O(n^3): for each row the functional W = (M^{-1})^T is pushed
/// through the suffix products so every deflated factor costs O(n).
inline double atiyah_energy(std::span<const Vec3> pts, std::span<Vec3> grad) {
  const std::size_t n = pts.size();
  const auto m = atiyah_matrix(pts);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const auto &packed = lu.matrixLU();
  double log_mod = 0.0;
  for (Eigen::Index k = 0; k < packed.rows(); ++k)
    log_mod += std::log(std::abs(packed(k, k)));
  if (grad.empty())
    return -log_mod;
  std::fill(grad.begin(), grad.end(), Vec3{});
  if (!std::isfinite(log_mod))
    return -log_mod;
  const Eigen::MatrixXcd inv = lu.inverse();

  struct Factor {
    std::size_t j;
    Vec3 v;
    double length;
    SpinorFactor s;
  };
  std::vector<Factor> factors;
  factors.reserve(n);
  // lambda[j][a] = W(t^a * prod_{l > j} F_l); one spare slot for the shift
  std::vector<std::vector<Complex>> lambda(n, std::vector<Complex>(n + 1));
  std::vector<Complex> prefix(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    factors.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i)
        continue;
      const Vec3 delta = pts[j] - pts[i];
      const double len = norm(delta);
      const Vec3 v = delta / len;
      factors.push_back({j, v, len, spinor_lift(v)});
    }
    const std::size_t mcount = factors.size();
    auto &last = lambda[mcount - 1];
    for (std::size_t a = 0; a < n; ++a)
      last[a] = inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i));
    last[n] = 0.0;
    for (std::size_t q = mcount - 1; q > 0; --q) {
      const auto &f = factors[q].s;
      auto &dst = lambda[q - 1];
      const auto &src = lambda[q];
      for (std::size_t a = 0; a < n; ++a)
        dst[a] = -f.u1 * src[a] + f.u0 * src[a + 1];
      dst[n] = 0.0;
    }
    std::fill(prefix.begin(), prefix.end(), Complex(0.0));
    prefix[0] = 1.0;
    for (std::size_t q = 0; q < mcount; ++q) {
      const auto &lam = lambda[q];
      Complex val_q(0.0), val_tq(0.0);
      for (std::size_t a = 0; a <= q; ++a) {
        val_q += prefix[a] * lam[a];
        val_tq += prefix[a] * lam[a + 1];
      }
      const Factor &f = factors[q];
      const Vec3 &v = f.v;
      // d(log det) = val_tq du0 - val_q du1; partials of the spinor in each chart
      Complex du0[3], du1[3];
      if (v.z >= 0.0) {
        const double s = 2.0 * (1.0 + v.z);
        const double rs = 1.0 / std::sqrt(s);
        du0[0] = du0[1] = 0.0;
        du0[2] = 1.0 / (4.0 * f.s.u0.real());
        du1[0] = rs;
        du1[1] = Complex(0.0, rs);
        du1[2] = -Complex(v.x, v.y) * rs / s;
      } else {
        const double s = 2.0 * (1.0 - v.z);
        const double rs = 1.0 / std::sqrt(s);
        du0[0] = rs;
        du0[1] = Complex(0.0, -rs);
        du0[2] = Complex(v.x, -v.y) * rs / s;
        du1[0] = du1[1] = 0.0;
        du1[2] = -1.0 / (4.0 * f.s.u1.real());
      }
      Vec3 gv;
      gv.x = -(val_tq * du0[0] - val_q * du1[0]).real();
      gv.y = -(val_tq * du0[1] - val_q * du1[1]).real();
      gv.z = -(val_tq * du0[2] - val_q * du1[2]).real();
      const Vec3 gd = (gv - v * dot(gv, v)) / f.length;
      grad[f.j] += gd;
      grad[i] -= gd;
      // prefix *= (-u1 + u0 t)
      for (std::size_t k = q + 2; k-- > 0;) {
        const Complex lower = k > 0 ? prefix[k - 1] : Complex(0.0);
        prefix[k] = -f.s.u1 * prefix[k] + f.s.u0 * lower;
      }
    }
  }
  return -log_mod;
}

} // namespace detail

} // namespace polyform
