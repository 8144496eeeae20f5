#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "polyform/errors.hpp"
#include "polyform/geometry.hpp"

namespace polyform {

/// Schoenflies point-group label. `k` is the number printed in the label
/// (the S_2k family stores 2k); it is unused for T, O, Y and the infinite groups.
struct SchoenfliesLabel {
  enum class Family { C, Cv, Ch, S, D, Dd, Dh, T, Td, Th, O, Oh, Y, Yh, Ci, Dinfh, Cinfv };
  Family family = Family::C;
  int k = 1;

  std::string str() const {
    const std::string n = std::to_string(k);
    switch (family) {
    case Family::C:
      return "C_" + n;
    case Family::Cv:
      return "C_" + n + "v";
    case Family::Ch:
      return "C_" + n + "h";
    case Family::S:
      return "S_" + n;
    case Family::D:
      return "D_" + n;
    case Family::Dd:
      return "D_" + n + "d";
    case Family::Dh:
      return "D_" + n + "h";
    case Family::T:
      return "T";
    case Family::Td:
      return "T_d";
    case Family::Th:
      return "T_h";
    case Family::O:
      return "O";
    case Family::Oh:
      return "O_h";
    case Family::Y:
      return "Y";
    case Family::Yh:
      return "Y_h";
    case Family::Ci:
      return "C_i";
    case Family::Dinfh:
      return "D_∞h";
    case Family::Cinfv:
      return "C_∞v";
    }
    return "?";
  }

  bool is_infinite() const { return family == Family::Dinfh || family == Family::Cinfv; }

  friend bool operator==(const SchoenfliesLabel &a, const SchoenfliesLabel &b) { return a.str() == b.str(); }

  /// Parses labels as printed by str(); also accepts I / I_h, C_s, C_inf v and D_inf h.
  static SchoenfliesLabel parse(std::string_view s) {
    using F = Family;
    auto fail = [&]() -> SchoenfliesLabel { throw InvalidArgument("unknown Schoenflies label '" + std::string(s) + "'"); };
    if (s == "T")
      return {F::T, 1};
    if (s == "T_d")
      return {F::Td, 1};
    if (s == "T_h")
      return {F::Th, 1};
    if (s == "O")
      return {F::O, 1};
    if (s == "O_h")
      return {F::Oh, 1};
    if (s == "Y" || s == "I")
      return {F::Y, 1};
    if (s == "Y_h" || s == "I_h")
      return {F::Yh, 1};
    if (s == "C_i" || s == "S_2")
      return {F::Ci, 1};
    if (s == "C_s")
      return {F::Ch, 1};
    if (s == "D_∞h" || s == "D_infh" || s == "D_inf_h")
      return {F::Dinfh, 0};
    if (s == "C_∞v" || s == "C_infv" || s == "C_inf_v")
      return {F::Cinfv, 0};
    if (s.size() < 3 || s[1] != '_' || (s[0] != 'C' && s[0] != 'D' && s[0] != 'S'))
      return fail();
    std::size_t pos = 2;
    int k = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9')
      k = k * 10 + (s[pos++] - '0');
    if (pos == 2 || k < 1)
      return fail();
    const std::string_view suffix = s.substr(pos);
    if (s[0] == 'S') {
      if (!suffix.empty() || k % 2 != 0 || k < 4)
        return fail();
      return {F::S, k};
    }
    if (s[0] == 'C') {
      if (suffix.empty())
        return {F::C, k};
      if (suffix == "v" && k >= 2)
        return {F::Cv, k};
      if (suffix == "h")
        return {F::Ch, k};
      return fail();
    }
    if (k < 2)
      return fail();
    if (suffix.empty())
      return {F::D, k};
    if (suffix == "d")
      return {F::Dd, k};
    if (suffix == "h")
      return {F::Dh, k};
    return fail();
  }
};

struct SymmetryElement {
  enum class Kind { Rotation, Mirror, Improper, Inversion };
  Kind kind = Kind::Rotation;
  /// Rotation/improper axis or mirror normal; zero for the inversion.
  Vec3 axis;
  /// Highest order found on this axis; 0 marks the infinite axis of a linear set.
  int order = 1;
};

inline std::string_view to_string(SymmetryElement::Kind k) {
  switch (k) {
  case SymmetryElement::Kind::Rotation:
    return "rotation";
  case SymmetryElement::Kind::Mirror:
    return "mirror";
  case SymmetryElement::Kind::Improper:
    return "improper";
  case SymmetryElement::Kind::Inversion:
    return "inversion";
  }
  return "?";
}

struct SymmetryReport {
  SchoenfliesLabel label;
  /// Number of proper rotations including the identity; 0 for infinite groups.
  std::size_t rotation_order = 0;
  /// Number of operations in the detected group (0 for infinite groups).
  std::size_t group_size = 0;
  std::vector<SymmetryElement> elements;
  double tolerance = 1e-4;
  /// Set when detection at tolerance / 10 yields a different label (reported in `alternate`).
  bool unstable = false;
  std::optional<SchoenfliesLabel> alternate;
};

inline constexpr double kDefaultSymmetryTolerance = 1e-4;

namespace detail {

using Mat3 = Eigen::Matrix3d;

inline Eigen::Vector3d ev(const Vec3 &v) { return {v.x, v.y, v.z}; }
inline Vec3 vv(const Eigen::Vector3d &v) { return {v.x(), v.y(), v.z()}; }

inline Mat3 rotation_matrix(const Vec3 &axis, double angle) {
  return Eigen::AngleAxisd(angle, ev(normalized(axis))).toRotationMatrix();
}

inline Mat3 reflection_matrix(const Vec3 &normal) {
  const Eigen::Vector3d u = ev(normalized(normal));
  return Mat3::Identity() - 2.0 * u * u.transpose();
}

inline bool same_matrix(const Mat3 &a, const Mat3 &b, double tol = 1e-8) { return (a - b).cwiseAbs().maxCoeff() < tol; }

/// Canonical sign: first coordinate with |c| > 1e-9 is positive.
inline Vec3 canonical_direction(Vec3 v) {
  v = normalized(v);
  for (double c : {v.x, v.y, v.z})
    if (std::abs(c) > 1e-9) {
      if (c < 0.0)
        v = -v;
      break;
    }
  return v;
}

inline bool parallel(const Vec3 &a, const Vec3 &b, double tol = 1e-6) { return norm(cross(a, b)) < tol; }

/// Unit-RMS, centroid-centred copy of the points.
struct NormalizedCloud {
  std::vector<Vec3> pts;
  double tol;

  bool maps_to_self(const Mat3 &m) const {
    for (const Vec3 &p : pts) {
      const Vec3 q = vv(m * ev(p));
      bool found = false;
      for (const Vec3 &r : pts)
        if (distance(q, r) < tol) {
          found = true;
          break;
        }
      if (!found)
        return false;
    }
    return true;
  }

  /// gcd of the sizes of the rings the points form about `axis` (points on
  /// the axis ignored); 0 when every point is on the axis.
  int ring_gcd(const Vec3 &axis) const {
    struct HR {
      double h, rho;
    };
    std::vector<HR> v;
    for (const Vec3 &p : pts) {
      const double h = dot(p, axis);
      const double rho = norm(p - axis * h);
      if (rho >= tol)
        v.push_back({h, rho});
    }
    if (v.empty())
      return 0;
    std::sort(v.begin(), v.end(), [](const HR &a, const HR &b) { return a.h < b.h; });
    int g = 0;
    std::size_t start = 0;
    while (start < v.size()) {
      std::size_t end = start + 1;
      while (end < v.size() && v[end].h - v[end - 1].h < tol)
        ++end;
      std::vector<double> rho;
      for (std::size_t i = start; i < end; ++i)
        rho.push_back(v[i].rho);
      std::sort(rho.begin(), rho.end());
      int run = 1;
      for (std::size_t i = 1; i <= rho.size(); ++i) {
        if (i < rho.size() && rho[i] - rho[i - 1] < tol) {
          ++run;
        } else {
          g = std::gcd(g, run);
          run = 1;
        }
      }
      if (g == 1)
        return 1;
      start = end;
    }
    return g;
  }

  bool heights_symmetric(const Vec3 &normal) const {
    std::vector<double> h;
    for (const Vec3 &p : pts)
      h.push_back(dot(p, normal));
    std::sort(h.begin(), h.end());
    for (std::size_t i = 0; i < h.size(); ++i)
      if (std::abs(h[i] + h[h.size() - 1 - i]) > 2.0 * tol)
        return false;
    return true;
  }

  /// Index image of every point under `m`; empty unless `m` permutes the cloud.
  std::vector<int> permutation_of(const Mat3 &m) const {
    std::vector<int> perm(pts.size(), -1);
    std::vector<char> hit(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec3 q = vv(m * ev(pts[i]));
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (!hit[j] && distance(q, pts[j]) < tol) {
          perm[i] = static_cast<int>(j);
          hit[j] = 1;
          break;
        }
      if (perm[i] < 0)
        return {};
    }
    return perm;
  }

  /// Orthogonal matrix with determinant `det_sign` best mapping each point to its image under `perm`.
  Mat3 fit(const std::vector<int> &perm, double det_sign) const {
    Mat3 h = Mat3::Zero();
    for (std::size_t i = 0; i < pts.size(); ++i)
      h += ev(pts[i]) * ev(pts[static_cast<std::size_t>(perm[i])]).transpose();
    Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 d = Mat3::Identity();
    d(2, 2) = det_sign * (svd.matrixV() * svd.matrixU().transpose()).determinant() > 0.0 ? 1.0 : -1.0;
    return svd.matrixV() * d * svd.matrixU().transpose();
  }
};

inline NormalizedCloud normalize_for_symmetry(std::span<const Vec3> pts, double tol) {
  return {normalized_cloud(pts), tol};
}

inline Mat3 inertia_tensor(std::span<const Vec3> pts) {
  Mat3 t = Mat3::Zero();
  for (const Vec3 &p : pts) {
    const Eigen::Vector3d v = ev(p);
    t += v.squaredNorm() * Mat3::Identity() - v * v.transpose();
  }
  return t;
}

inline void add_direction(std::vector<Vec3> &out, const Vec3 &v, double min_norm) {
  if (norm(v) < min_norm)
    return;
  const Vec3 c = canonical_direction(v);
  for (const Vec3 &o : out)
    if (parallel(o, c))
      return;
  out.push_back(c);
}

/// Order of a matrix in the group (smallest m with M^m = I), up to `cap`.
inline int element_order(const Mat3 &m, int cap = 240) {
  Mat3 p = m;
  for (int k = 1; k <= cap; ++k) {
    if (same_matrix(p, Mat3::Identity(), 1e-6))
      return k;
    p = p * m;
  }
  return 0;
}

/// Axis of a proper rotation (or of -M for an improper one).
inline Vec3 rotation_axis(const Mat3 &r) {
  const Eigen::Vector3d skew(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  if (skew.norm() > 1e-6)
    return canonical_direction(vv(skew));
  // half-turn: R + I = 2 a a^T
  const Mat3 s = r + Mat3::Identity();
  Eigen::Index col = 0;
  s.colwise().norm().maxCoeff(&col);
  return canonical_direction(vv(s.col(col)));
}

/// Closes `gens` under multiplication. With a cloud, elements are identified
/// by the permutation they induce and each product is refitted to the points,
/// so round-off cannot accumulate. Returns false past `cap` elements.
inline bool close_group(std::vector<Mat3> &group, const std::vector<Mat3> &gens, const NormalizedCloud *cloud,
                        std::size_t cap = 240) {
  if (cloud) {
    std::vector<std::vector<int>> gen_perms;
    std::vector<double> gen_dets;
    for (const Mat3 &g : gens)
      if (auto p = cloud->permutation_of(g); !p.empty()) {
        gen_perms.push_back(std::move(p));
        gen_dets.push_back(g.determinant() > 0.0 ? 1.0 : -1.0);
      }
    std::vector<int> identity(cloud->pts.size());
    std::iota(identity.begin(), identity.end(), 0);
    std::map<std::pair<std::vector<int>, bool>, std::size_t> seen{{{identity, true}, 0}};
    std::vector<std::pair<std::vector<int>, double>> elems{{identity, 1.0}};
    group.assign(1, Mat3::Identity());
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t k = 0; k < gen_perms.size(); ++k) {
        std::vector<int> prod(identity.size());
        for (std::size_t j = 0; j < prod.size(); ++j)
          prod[j] = elems[i].first[static_cast<std::size_t>(gen_perms[k][j])];
        const double det = elems[i].second * gen_dets[k];
        if (!seen.emplace(std::make_pair(prod, det > 0.0), elems.size()).second)
          continue;
        const Mat3 m = cloud->fit(prod, det);
        if (cloud->permutation_of(m) != prod) {
          seen.erase({prod, det > 0.0});
          continue;
        }
        elems.emplace_back(std::move(prod), det);
        group.push_back(m);
        if (group.size() > cap)
          return false;
      }
    return true;
  }
  if (group.empty())
    group.push_back(Mat3::Identity());
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const Mat3 &g : gens) {
      const Mat3 prod = group[i] * g;
      bool seen = false;
      for (const Mat3 &h : group)
        if (same_matrix(h, prod)) {
          seen = true;
          break;
        }
      if (seen)
        continue;
      group.push_back(prod);
      if (group.size() > cap)
        return false;
    }
  }
  return true;
}

struct GroupSummary {
  std::vector<SymmetryElement> rotations; // by axis, highest order
  std::vector<SymmetryElement> mirrors;
  std::vector<SymmetryElement> impropers; // by axis, highest order (excluding mirrors)
  bool inversion = false;
  std::size_t proper_count = 0;
};

inline GroupSummary summarize(const std::vector<Mat3> &group) {
  GroupSummary s;
  auto bump = [](std::vector<SymmetryElement> &list, SymmetryElement::Kind kind, const Vec3 &axis, int order) {
    for (auto &e : list)
      if (parallel(e.axis, axis)) {
        e.order = std::max(e.order, order);
        return;
      }
    list.push_back({kind, axis, order});
  };
  for (const Mat3 &m : group) {
    const double det = m.determinant();
    if (det > 0.0) {
      ++s.proper_count;
      if (same_matrix(m, Mat3::Identity(), 1e-6))
        continue;
      bump(s.rotations, SymmetryElement::Kind::Rotation, rotation_axis(m), element_order(m));
    } else {
      if (same_matrix(m, -Mat3::Identity(), 1e-6)) {
        s.inversion = true;
        continue;
      }
      if (std::abs(m.trace() - 1.0) < 1e-6) {
        const Mat3 s2 = Mat3::Identity() - m; // 2 u u^T
        Eigen::Index col = 0;
        s2.colwise().norm().maxCoeff(&col);
        bump(s.mirrors, SymmetryElement::Kind::Mirror, canonical_direction(vv(s2.col(col))), 2);
        continue;
      }
      bump(s.impropers, SymmetryElement::Kind::Improper, rotation_axis(-m), element_order(m));
    }
  }
  auto order = [](std::vector<SymmetryElement> &list) {
    std::sort(list.begin(), list.end(), [](const SymmetryElement &a, const SymmetryElement &b) {
      if (a.order != b.order)
        return a.order > b.order;
      return std::tie(b.axis.x, b.axis.y, b.axis.z) < std::tie(a.axis.x, a.axis.y, a.axis.z);
    });
  };
  order(s.rotations);
  order(s.mirrors);
  order(s.impropers);
  return s;
}

inline SchoenfliesLabel classify(const GroupSummary &s) {
  using F = SchoenfliesLabel::Family;
  auto count_order = [&](int k) {
    return std::count_if(s.rotations.begin(), s.rotations.end(), [k](const SymmetryElement &e) { return e.order % k == 0; });
  };
  const bool mirrors = !s.mirrors.empty();
  if (count_order(5) >= 2)
    return {s.inversion ? F::Yh : F::Y, 1};
  if (count_order(4) >= 2)
    return {s.inversion ? F::Oh : F::O, 1};
  if (count_order(3) >= 2) {
    if (s.inversion)
      return {F::Th, 1};
    return {mirrors ? F::Td : F::T, 1};
  }
  if (s.rotations.empty()) {
    if (mirrors)
      return {F::Ch, 1};
    if (s.inversion)
      return {F::Ci, 1};
    return {F::C, 1};
  }
  const int k = s.rotations.front().order;
  auto improper_on = [&](const Vec3 &axis, int order) {
    for (const auto &e : s.impropers)
      if (parallel(e.axis, axis) && e.order == order)
        return true;
    return false;
  };
  // ties for the principal axis (D_2 families): prefer the one carrying S_2k
  Vec3 principal = s.rotations.front().axis;
  for (const auto &e : s.rotations)
    if (e.order == k && improper_on(e.axis, 2 * k)) {
      principal = e.axis;
      break;
    }
  std::size_t perpendicular_c2 = 0;
  for (const auto &e : s.rotations)
    if (!parallel(e.axis, principal) && std::abs(dot(e.axis, principal)) < 1e-6 && e.order % 2 == 0)
      ++perpendicular_c2;
  bool sigma_h = false;
  for (const auto &m : s.mirrors)
    if (parallel(m.axis, principal))
      sigma_h = true;
  if (perpendicular_c2 > 0) {
    if (sigma_h)
      return {F::Dh, k};
    return {mirrors ? F::Dd : F::D, k};
  }
  if (sigma_h)
    return {F::Ch, k};
  if (mirrors)
    return {F::Cv, k};
  if (improper_on(principal, 2 * k))
    return {F::S, 2 * k};
  return {F::C, k};
}

struct Detection {
  SchoenfliesLabel label;
  std::vector<Mat3> group;
  GroupSummary summary;
};

inline Detection detect_once(std::span<const Vec3> raw, double tol) {
  const NormalizedCloud cloud = normalize_for_symmetry(raw, tol);
  const auto &pts = cloud.pts;
  const std::size_t n = pts.size();
  Detection out;

  if (is_collinear(pts, 1e-9) || n == 2) {
    const bool inv = cloud.maps_to_self(-Mat3::Identity());
    out.label = {inv ? SchoenfliesLabel::Family::Dinfh : SchoenfliesLabel::Family::Cinfv, 0};
    Vec3 axis{0, 0, 1};
    for (const Vec3 &p : pts)
      if (norm(p) > 1e-9) {
        axis = canonical_direction(p);
        break;
      }
    out.summary.rotations.push_back({SymmetryElement::Kind::Rotation, axis, 0});
    out.summary.inversion = inv;
    return out;
  }

  std::vector<Vec3> axes;
  const double min_norm = 10.0 * tol;
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia_tensor(pts));
  for (int c = 0; c < 3; ++c)
    add_direction(axes, vv(eig.eigenvectors().col(c)), 0.5);
  for (std::size_t i = 0; i < n; ++i)
    add_direction(axes, pts[i], min_norm);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      add_direction(axes, (pts[i] + pts[j]) * 0.5, min_norm);
      add_direction(axes, cross(pts[i], pts[j]), min_norm);
    }

  std::vector<Mat3> gens;
  std::vector<std::pair<Vec3, int>> found_axes;
  for (const Vec3 &a : axes) {
    const int g = cloud.ring_gcd(a);
    if (g < 2)
      continue;
    for (int k = g; k >= 2; --k) {
      if (g % k != 0)
        continue;
      const Mat3 r = rotation_matrix(a, 2.0 * std::numbers::pi / k);
      if (cloud.maps_to_self(r)) {
        gens.push_back(r);
        found_axes.emplace_back(a, k);
        break;
      }
    }
  }

  std::vector<Vec3> normals;
  for (int c = 0; c < 3; ++c)
    add_direction(normals, vv(eig.eigenvectors().col(c)), 0.5);
  for (const auto &[a, k] : found_axes) {
    add_direction(normals, a, 0.5);
    for (const Vec3 &p : pts)
      add_direction(normals, cross(a, p), min_norm);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      add_direction(normals, pts[i] - pts[j], min_norm);
  for (const Vec3 &u : normals) {
    if (!cloud.heights_symmetric(u))
      continue;
    const Mat3 m = reflection_matrix(u);
    if (cloud.maps_to_self(m))
      gens.push_back(m);
  }

  for (const auto &[a, k] : found_axes) {
    const Mat3 s = rotation_matrix(a, std::numbers::pi / k) * reflection_matrix(a);
    if (cloud.maps_to_self(s))
      gens.push_back(s);
  }
  if (cloud.maps_to_self(-Mat3::Identity()))
    gens.push_back(-Mat3::Identity());

  std::vector<Mat3> group;
  close_group(group, gens, &cloud);
  out.group = group;
  out.summary = summarize(group);
  out.label = classify(out.summary);
  return out;
}

inline SymmetryReport make_report(const Detection &d, double tol) {
  SymmetryReport r;
  r.label = d.label;
  r.tolerance = tol;
  if (d.label.is_infinite()) {
    r.elements = d.summary.rotations;
    if (d.summary.inversion)
      r.elements.push_back({SymmetryElement::Kind::Inversion, {}, 2});
    return r;
  }
  r.rotation_order = d.summary.proper_count;
  r.group_size = d.group.size();
  r.elements = d.summary.rotations;
  r.elements.insert(r.elements.end(), d.summary.mirrors.begin(), d.summary.mirrors.end());
  r.elements.insert(r.elements.end(), d.summary.impropers.begin(), d.summary.impropers.end());
  if (d.summary.inversion)
    r.elements.push_back({SymmetryElement::Kind::Inversion, {}, 2});
  return r;
}

} // namespace detail

/// Point group of the configuration. The points are centred on their
/// centroid and scaled to unit RMS radius; an operation is accepted when it
/// maps every point within `tol` of some point.
inline SymmetryReport detect_point_group(std::span<const Vec3> pts, double tol = kDefaultSymmetryTolerance) {
  if (pts.size() < 2)
    throw InvalidArgument("detect_point_group needs at least 2 points");
  if (!(tol > 0.0))
    throw InvalidArgument("detect_point_group: tolerance must be positive");
  const auto coarse = detail::detect_once(pts, tol);
  const auto fine = detail::detect_once(pts, tol / 10.0);
  SymmetryReport r = detail::make_report(coarse, tol);
  if (!(fine.label == coarse.label)) {
    r.unstable = true;
    r.alternate = fine.label;
  }
  return r;
}

inline SymmetryReport detect_point_group(const Configuration &c, double tol = kDefaultSymmetryTolerance) {
  return detect_point_group(c.points(), tol);
}

/// Order of the abstract group, by closing a generator set for the label.
inline std::size_t group_order(const SchoenfliesLabel &label) {
  using F = SchoenfliesLabel::Family;
  using detail::Mat3;
  if (label.is_infinite())
    throw InfiniteGroup(label.str() + " is infinite");
  const Vec3 z{0, 0, 1}, x{1, 0, 0};
  const int k = label.k;
  auto cz = [&](int m) { return detail::rotation_matrix(z, 2.0 * std::numbers::pi / m); };
  const Mat3 c2x = detail::rotation_matrix(x, std::numbers::pi);
  const Mat3 sigma_h = detail::reflection_matrix(z);
  const Mat3 sigma_v = detail::reflection_matrix(Vec3{0, 1, 0});
  const Mat3 inversion = -Mat3::Identity();
  const Mat3 c3 = detail::rotation_matrix(Vec3{1, 1, 1}, 2.0 * std::numbers::pi / 3.0);
  const double phi = std::numbers::phi;
  const Mat3 c5a = detail::rotation_matrix(Vec3{0, 1, phi}, 2.0 * std::numbers::pi / 5.0);
  const Mat3 c5b = detail::rotation_matrix(Vec3{0, -1, phi}, 2.0 * std::numbers::pi / 5.0);
  std::vector<Mat3> gens;
  switch (label.family) {
  case F::C:
    gens = {cz(k)};
    break;
  case F::Cv:
    gens = {cz(k), sigma_v};
    break;
  case F::Ch:
    gens = {cz(k), sigma_h};
    break;
  case F::S:
    gens = {detail::rotation_matrix(z, 2.0 * std::numbers::pi / k) * sigma_h};
    break;
  case F::D:
    gens = {cz(k), c2x};
    break;
  case F::Dd:
    gens = {cz(k), c2x, detail::rotation_matrix(z, std::numbers::pi / k) * sigma_h};
    break;
  case F::Dh:
    gens = {cz(k), c2x, sigma_h};
    break;
  case F::T:
    gens = {cz(2), c3};
    break;
  case F::Td:
    gens = {cz(2), c3, detail::reflection_matrix(Vec3{1, -1, 0})};
    break;
  case F::Th:
    gens = {cz(2), c3, inversion};
    break;
  case F::O:
    gens = {cz(4), c3};
    break;
  case F::Oh:
    gens = {cz(4), c3, inversion};
    break;
  case F::Y:
    gens = {c5a, c5b};
    break;
  case F::Yh:
    gens = {c5a, c5b, inversion};
    break;
  case F::Ci:
    gens = {inversion};
    break;
  default:
    break;
  }
  std::vector<Mat3> group;
  detail::close_group(group, gens, nullptr, 100000);
  return group.size();
}

/// Centres the configuration and rotates its inertia eigenvectors onto the
/// coordinate axes, eigenvalues ascending. Each axis is signed so its first
/// nonzero coordinate is positive (so the map may be a reflection).
/// Degenerate eigenspaces: the first axis of the eigenspace is the point
/// direction projected into it that maximizes sum (x . u)^4, ties going to
/// the lexicographically largest u; this makes the map idempotent.
inline Configuration align_principal(const Configuration &config) {
  const auto pts = config.points();
  if (pts.size() < 2)
    throw InvalidArgument("align_principal needs at least 2 points");
  const Vec3 c = centroid(pts);
  std::vector<Vec3> centred;
  for (const Vec3 &p : pts)
    centred.push_back(p - c);
  Eigen::SelfAdjointEigenSolver<detail::Mat3> eig(detail::inertia_tensor(centred));
  const Eigen::Vector3d lambda = eig.eigenvalues();
  const double scale = std::max(1.0, std::abs(lambda(2)));
  std::array<Vec3, 3> axes;
  for (int i = 0; i < 3; ++i)
    axes[static_cast<std::size_t>(i)] = detail::vv(eig.eigenvectors().col(i));

  auto quartic = [&](const Vec3 &u) {
    double s = 0.0;
    for (const Vec3 &p : centred)
      s += std::pow(dot(p, u), 4);
    return s;
  };
  // best direction inside span(basis) among normalized point projections
  auto pick = [&](const std::vector<Vec3> &basis) {
    std::optional<Vec3> best;
    double best_val = -1.0;
    for (const Vec3 &p : centred) {
      Vec3 proj{};
      for (const Vec3 &b : basis)
        proj += b * dot(p, b);
      if (norm(proj) < 1e-9)
        continue;
      for (const Vec3 &u : {normalized(proj), -normalized(proj)}) {
        const double v = quartic(u);
        const double slack = 1e-9 * std::max(1.0, best_val);
        if (!best || v > best_val + slack ||
            (std::abs(v - best_val) <= slack && std::tie(u.x, u.y, u.z) > std::tie(best->x, best->y, best->z))) {
          if (!best || v > best_val + slack)
            best_val = v;
          best = u;
        }
      }
    }
    return best;
  };

  int i = 0;
  while (i < 3) {
    int j = i + 1;
    while (j < 3 && std::abs(lambda(j) - lambda(i)) <= 1e-6 * scale)
      ++j;
    const int size = j - i;
    if (size >= 2) {
      std::vector<Vec3> basis(axes.begin() + i, axes.begin() + j);
      if (auto u = pick(basis)) {
        axes[static_cast<std::size_t>(i)] = *u;
        std::vector<Vec3> rest;
        if (size == 2) {
          const Vec3 other = basis[0] - *u * dot(basis[0], *u);
          rest.push_back(norm(other) > 1e-6 ? normalized(other) : normalized(basis[1] - *u * dot(basis[1], *u)));
          axes[static_cast<std::size_t>(i + 1)] = rest[0];
        } else {
          // complement plane of u, then pick again inside it
          Vec3 e = std::abs(u->x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
          const Vec3 b1 = normalized(e - *u * dot(e, *u));
          const Vec3 b2 = cross(*u, b1);
          const auto w = pick({b1, b2});
          const Vec3 second = w ? *w : b1;
          axes[static_cast<std::size_t>(i + 1)] = second;
          axes[static_cast<std::size_t>(i + 2)] = normalized(cross(*u, second));
        }
      }
    }
    i = j;
  }
  for (Vec3 &a : axes) {
    for (double coord : {a.x, a.y, a.z})
      if (std::abs(coord) > 1e-12) {
        if (coord < 0.0)
          a = -a;
        break;
      }
  }
  std::vector<Vec3> out;
  out.reserve(centred.size());
  for (const Vec3 &p : centred)
    out.push_back({dot(p, axes[0]), dot(p, axes[1]), dot(p, axes[2])});
  // an off-centre sphere or planar set no longer satisfies its constraint
  Configuration aligned(std::move(out), config.constraint());
  if (aligned.violation())
    aligned = Configuration(std::vector<Vec3>(aligned.points().begin(), aligned.points().end()), Constraint::Free);
  return aligned;
}

} // namespace polyform
