#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "polyform/geometry.hpp"

namespace polyform {

struct Shell {
  double mean_radius = 0.0;
  std::vector<std::size_t> members;
};

/// Concentric radius bands about the centroid, innermost first.
struct ShellDecomposition {
  std::vector<Shell> shells;
  double gap_ratio = 1.2;

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (const auto &s : shells)
      out.push_back(s.members.size());
    return out;
  }
};

inline constexpr double kDefaultShellGap = 1.2;

/// Splits points into shells wherever consecutive sorted radii jump by more
/// than `gap_ratio`; a point within 1e-6 of the centroid is its own shell.
inline ShellDecomposition shell_decomposition(std::span<const Vec3> pts, double gap_ratio = kDefaultShellGap) {
  if (!(gap_ratio > 1.0))
    throw InvalidArgument("shell_decomposition: gap_ratio must exceed 1");
  ShellDecomposition out;
  out.gap_ratio = gap_ratio;
  if (pts.empty())
    return out;
  const Vec3 c = centroid(pts);
  std::vector<double> r(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    r[i] = distance(pts[i], c);
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r[a] < r[b]; });

  constexpr double kCentre = 1e-6;
  double prev = -1.0;
  for (std::size_t i : order) {
    const bool centre = r[i] < kCentre;
    const bool prev_centre = prev >= 0.0 && prev < kCentre;
    if (out.shells.empty() || prev_centre || (!centre && r[i] / prev > gap_ratio))
      out.shells.emplace_back();
    out.shells.back().members.push_back(i);
    prev = r[i];
  }
  for (auto &s : out.shells) {
    double sum = 0.0;
    for (std::size_t i : s.members)
      sum += r[i];
    s.mean_radius = sum / static_cast<double>(s.members.size());
  }
  return out;
}

inline ShellDecomposition shell_decomposition(const Configuration &config, double gap_ratio = kDefaultShellGap) {
  return shell_decomposition(config.points(), gap_ratio);
}

} // namespace polyform
