#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "polyform/energies.hpp"
#include "polyform/generators.hpp"
#include "polyform/geometry.hpp"
#include "polyform/hull.hpp"
#include "polyform/signature.hpp"

namespace polyform {

struct OptimizerSettings {
  /// Projected-gradient norm tolerance per point; the run stops at tolerance * n.
  double gradient_tolerance = 1e-10;
  int max_iterations = 50000;
  /// Random starts; 0 selects the default budget max(50, 10 n).
  int start_count = 0;
  std::uint64_t seed = 0;
  /// Largest single-point displacement of the first trial step.
  double initial_step = 0.1;
  double armijo = 1e-4;
  double curvature = 0.1;
  /// Platonic / Mackay seeds ahead of the random starts.
  bool structured_seeds = true;
  /// Northby-style partially filled outer shells (Lennard-Jones only).
  bool shell_seeds = true;
  /// Worker threads for multi-start; 0 means hardware concurrency.
  unsigned threads = 0;

  int effective_starts(std::size_t n) const {
    return start_count > 0 ? start_count : std::max(50, 10 * static_cast<int>(n));
  }
};

/// One deduplicated local minimum of a census.
struct CensusEntry {
  std::string signature;
  double energy = 0.0;
  std::size_t count = 0;
  bool converged = true;
};

/// Full record of one optimization.
struct MinimizationRun {
  EnergyModel model;
  std::size_t n = 0;
  Constraint constraint = Constraint::Free;
  OptimizerSettings settings;
  Configuration best;
  double best_energy = std::numeric_limits<double>::infinity();
  double start_energy = std::numeric_limits<double>::infinity();
  double gradient_norm = std::numeric_limits<double>::infinity();
  /// Iterations of the run that produced `best`.
  std::size_t iterations = 0;
  std::size_t total_iterations = 0;
  std::size_t starts_completed = 0;
  std::size_t converged_starts = 0;
  /// False flags NonConverged: `best` is then the best iterate, not a certified minimum.
  bool converged = false;
  /// Maximin runs only: achieved minimum pair distance.
  double min_distance = 0.0;
  std::vector<CensusEntry> census;
  double wall_seconds = 0.0;
};

namespace detail {

// ---------------------------------------------------------------------------
// constraint geometry

inline void project_point(Vec3 &x, Constraint c) {
  switch (c) {
  case Constraint::UnitSphere:
    x = normalized(x);
    break;
  case Constraint::Plane:
    x.z = 0.0;
    break;
  case Constraint::UnitDisk: {
    x.z = 0.0;
    const double r = norm(x);
    if (r > 1.0)
      x /= r;
    break;
  }
  case Constraint::Free:
    break;
  }
}

inline bool on_disk_rim(const Vec3 &x) { return norm(x) >= 1.0 - 1e-12; }

/// Tangential (feasible-direction) part of a gradient.
inline Vec3 project_gradient(const Vec3 &x, Vec3 g, Constraint c) {
  switch (c) {
  case Constraint::UnitSphere:
    return g - x * dot(g, x);
  case Constraint::Plane:
    g.z = 0.0;
    return g;
  case Constraint::UnitDisk:
    g.z = 0.0;
    if (on_disk_rim(x) && dot(g, x) < 0.0) {
      const Vec3 r = normalized(x);
      g -= r * dot(g, r);
    }
    return g;
  case Constraint::Free:
    return g;
  }
  return g;
}

/// Re-expresses a tangent vector at a new base point (projection transport).
inline Vec3 transport(const Vec3 &x, Vec3 v, Constraint c) {
  switch (c) {
  case Constraint::UnitSphere:
    return v - x * dot(v, x);
  case Constraint::Plane:
  case Constraint::UnitDisk:
    v.z = 0.0;
    return v;
  case Constraint::Free:
    return v;
  }
  return v;
}

/// Retraction x -> R(x + a d) and the velocity dR/da.
inline void retract(const Vec3 &x, const Vec3 &d, double a, Constraint c, Vec3 &out, Vec3 &velocity) {
  Vec3 y = x + d * a;
  switch (c) {
  case Constraint::UnitSphere: {
    const double r = norm(y);
    out = y / r;
    velocity = (d - out * dot(out, d)) / r;
    return;
  }
  case Constraint::Plane:
    y.z = 0.0;
    out = y;
    velocity = {d.x, d.y, 0.0};
    return;
  case Constraint::UnitDisk: {
    y.z = 0.0;
    const double r = norm(y);
    if (r > 1.0) {
      out = y / r;
      const Vec3 dd{d.x, d.y, 0.0};
      velocity = (dd - out * dot(out, dd)) / r;
    } else {
      out = y;
      velocity = {d.x, d.y, 0.0};
    }
    return;
  }
  case Constraint::Free:
    out = y;
    velocity = d;
    return;
  }
}

inline double dot(std::span<const Vec3> a, std::span<const Vec3> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += polyform::dot(a[i], b[i]);
  return s;
}

inline double max_norm(std::span<const Vec3> a) {
  double m = 0.0;
  for (const Vec3 &v : a)
    m = std::max(m, norm(v));
  return m;
}

// ---------------------------------------------------------------------------
// nonlinear conjugate gradient

using Objective = std::function<double(std::span<const Vec3>, std::span<Vec3>)>;

struct LocalResult {
  std::vector<Vec3> x;
  double energy = 0.0;
  double start_energy = 0.0;
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Polak-Ribiere (PR+) conjugate gradient with a derivative-bracketing line
/// search, on the constraint manifold given by `c`. Restarts with steepest
/// descent every 3n iterations and whenever the direction stops descending.
inline LocalResult conjugate_gradient(const Objective &f, std::vector<Vec3> x, Constraint c,
                                      const OptimizerSettings &s) {
  const std::size_t n = x.size();
  for (Vec3 &p : x)
    project_point(p, c);
  std::vector<Vec3> g(n), gp(n), d(n);
  LocalResult out;
  double fx = f(x, g);
  out.start_energy = fx;
  for (std::size_t i = 0; i < n; ++i)
    gp[i] = project_gradient(x[i], g[i], c);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = -gp[i];
  const double tol = s.gradient_tolerance * static_cast<double>(n);
  const std::size_t restart_every = std::max<std::size_t>(3 * n, 10);

  struct Trial {
    double a = 0.0, f = 0.0, df = 0.0;
    std::vector<Vec3> x, g;
  };
  Trial lo, hi, cur;
  lo.x.resize(n);
  lo.g.resize(n);
  std::vector<Vec3> vel(n);

  auto evaluate_at = [&](double a, Trial &t) {
    t.a = a;
    t.x.resize(n);
    t.g.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      retract(x[i], d[i], a, c, t.x[i], vel[i]);
    t.f = f(t.x, t.g);
    t.df = std::isfinite(t.f) ? dot(std::span<const Vec3>(t.g), std::span<const Vec3>(vel))
                              : std::numeric_limits<double>::quiet_NaN();
  };

  double alpha = s.initial_step / std::max(max_norm(d), 1e-300);
  double prev_slope = 0.0;
  bool steepest = true;
  std::size_t since_restart = 0;
  std::size_t it = 0;
  double gnorm = std::sqrt(dot(std::span<const Vec3>(gp), std::span<const Vec3>(gp)));
  for (; it < static_cast<std::size_t>(s.max_iterations); ++it) {
    if (gnorm <= tol) {
      out.converged = true;
      break;
    }
    double slope = dot(std::span<const Vec3>(gp), std::span<const Vec3>(d));
    if (!(slope < 0.0)) {
      for (std::size_t i = 0; i < n; ++i)
        d[i] = -gp[i];
      slope = -gnorm * gnorm;
      steepest = true;
    }
    if (it > 0 && prev_slope < 0.0)
      alpha *= std::clamp(prev_slope / slope, 0.1, 10.0);
    // never let a single point jump further than half the configuration size
    const double size = std::max(rms_radius(x), 1e-3);
    alpha = std::min(alpha, 0.5 * size / std::max(max_norm(d), 1e-300));

    // --- line search
    const double f0 = fx;
    const double noise = 1e-13 * (std::abs(f0) + 1.0);
    lo.a = 0.0;
    lo.f = f0;
    lo.df = slope;
    bool have_hi = false, bad_hi = false, accepted = false, moved = false;
    double a = alpha;
    for (int ls = 0; ls < 60; ++ls) {
      evaluate_at(a, cur);
      const bool finite = std::isfinite(cur.f) && std::isfinite(cur.df);
      const bool decrease = finite && (cur.f <= f0 + s.armijo * a * slope || cur.f <= f0 + noise);
      if (!decrease) {
        hi = cur;
        have_hi = true;
        bad_hi = true;
      } else if (std::abs(cur.df) <= -s.curvature * slope) {
        accepted = true;
        break;
      } else if (cur.df > 0.0) {
        hi = cur;
        have_hi = true;
        bad_hi = false;
        std::swap(lo.x, lo.x); // keep lo as is
      } else {
        std::swap(lo, cur);
        moved = true;
      }
      const double width = have_hi ? hi.a - lo.a : 0.0;
      if (!have_hi) {
        a = lo.a * 4.0;
      } else if (!bad_hi) {
        // secant on the directional derivative
        double t = lo.a + width * lo.df / (lo.df - hi.df);
        a = std::clamp(t, lo.a + 0.05 * width, hi.a - 0.05 * width);
      } else if (std::isfinite(hi.f)) {
        const double denom = 2.0 * (hi.f - lo.f - lo.df * width);
        double t = denom > 0.0 ? lo.a - lo.df * width * width / denom : lo.a + 0.5 * width;
        a = std::clamp(t, lo.a + 0.1 * width, lo.a + 0.5 * width);
      } else {
        a = lo.a + 0.1 * width;
      }
      if (have_hi && width <= 1e-16 * std::max(1.0, hi.a))
        break;
    }
    if (!accepted && moved) {
      std::swap(cur, lo);
      accepted = true;
    }
    if (!accepted) {
      if (steepest)
        break; // no descent possible along the gradient: stalled at noise level
      for (std::size_t i = 0; i < n; ++i)
        d[i] = -gp[i];
      steepest = true;
      since_restart = 0;
      alpha = s.initial_step / std::max(max_norm(d), 1e-300);
      continue;
    }

    // --- accept and build the next direction
    alpha = cur.a;
    prev_slope = slope;
    std::vector<Vec3> gp_new(n);
    for (std::size_t i = 0; i < n; ++i)
      gp_new[i] = project_gradient(cur.x[i], cur.g[i], c);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec3 old = transport(cur.x[i], gp[i], c);
      num += polyform::dot(gp_new[i], gp_new[i] - old);
      den += polyform::dot(gp[i], gp[i]);
    }
    double beta = den > 0.0 ? std::max(0.0, num / den) : 0.0;
    if (++since_restart >= restart_every) {
      beta = 0.0;
      since_restart = 0;
    }
    for (std::size_t i = 0; i < n; ++i)
      d[i] = -gp_new[i] + transport(cur.x[i], d[i], c) * beta;
    steepest = beta == 0.0;
    x.swap(cur.x);
    g.swap(cur.g);
    gp.swap(gp_new);
    fx = cur.f;
    gnorm = std::sqrt(dot(std::span<const Vec3>(gp), std::span<const Vec3>(gp)));
  }
  if (!out.converged && gnorm <= tol)
    out.converged = true;
  for (Vec3 &p : x)
    project_point(p, c);
  out.x = std::move(x);
  out.energy = f(out.x, g);
  out.gradient_norm = gnorm;
  out.iterations = it;
  return out;
}

inline Objective model_objective(const EnergyModel &model) {
  return [model](std::span<const Vec3> pts, std::span<Vec3> grad) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (distance(pts[i], pts[j]) < kCoincidenceTolerance)
          return std::numeric_limits<double>::infinity();
    return evaluate(model, pts, grad);
  };
}

// ---------------------------------------------------------------------------
// seeding

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent generator for start `index` of a run seeded with `seed`.
inline std::mt19937_64 start_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

/// Radius of the ball random free starts are drawn from.
inline double start_radius(const EnergyModel &model, std::size_t n) {
  const double cbrt = std::cbrt(static_cast<double>(n));
  if (std::holds_alternative<LennardJones>(model))
    return 0.3 + 0.55 * cbrt;
  if (std::holds_alternative<CentralCoulomb>(model))
    return 0.8 * cbrt;
  if (std::holds_alternative<MonopoleLinear>(model))
    return 2.0 * static_cast<double>(n) / 3.0;
  return 1.0;
}

inline std::vector<Vec3> random_start(const EnergyModel &model, std::size_t n, Constraint c, std::mt19937_64 &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec3> pts;
  pts.reserve(n);
  const double radius = start_radius(model, n);
  const double min_sep = std::holds_alternative<LennardJones>(model) ? 0.6 : 0.0;
  while (pts.size() < n) {
    Vec3 p;
    switch (c) {
    case Constraint::UnitSphere: {
      Vec3 q{gauss(rng), gauss(rng), gauss(rng)};
      if (norm(q) < 1e-12)
        continue;
      p = normalized(q);
      break;
    }
    case Constraint::Plane:
    case Constraint::UnitDisk: {
      const double r = std::sqrt(unit(rng));
      const double t = 2.0 * std::numbers::pi * unit(rng);
      p = {r * std::cos(t), r * std::sin(t), 0.0};
      break;
    }
    case Constraint::Free: {
      Vec3 q{gauss(rng), gauss(rng), gauss(rng)};
      if (norm(q) < 1e-12)
        continue;
      p = normalized(q) * (radius * std::cbrt(unit(rng)));
      break;
    }
    }
    bool ok = true;
    for (int attempt = 0; attempt < 1; ++attempt)
      for (const Vec3 &o : pts)
        if (distance(o, p) < std::max(min_sep, 1e-9))
          ok = false;
    if (ok)
      pts.push_back(p);
  }
  return pts;
}

/// Mackay core plus the `k` outer-shell sites nearest to `toward`.
inline std::vector<Vec3> partial_mackay(std::size_t n, const Vec3 &toward) {
  int shells = 0;
  while (static_cast<std::size_t>(mackay_count(shells)) < n)
    ++shells;
  const auto full = mackay_icosahedron(shells);
  const auto core = static_cast<std::size_t>(mackay_count(shells - 1 < 0 ? 0 : shells - 1));
  std::vector<Vec3> pts(full.points().begin(), full.points().begin() + static_cast<long>(std::min(core, n)));
  if (pts.size() == n)
    return pts;
  std::vector<Vec3> outer(full.points().begin() + static_cast<long>(core), full.points().end());
  const Vec3 dir = normalized(toward);
  std::stable_sort(outer.begin(), outer.end(),
                   [&](const Vec3 &a, const Vec3 &b) { return distance(a, dir * 10.0) < distance(b, dir * 10.0); });
  for (std::size_t i = 0; pts.size() < n; ++i)
    pts.push_back(outer[i]);
  return pts;
}

/// Structured starting configurations for `model` at size n (may be empty).
inline std::vector<std::vector<Vec3>> structured_seeds(const EnergyModel &model, std::size_t n, Constraint c,
                                                       const OptimizerSettings &s) {
  std::vector<std::vector<Vec3>> seeds;
  if (!s.structured_seeds)
    return seeds;
  if (c == Constraint::UnitSphere) {
    for (auto kind : {PlatonicKind::Tetrahedron, PlatonicKind::Octahedron, PlatonicKind::Cube,
                      PlatonicKind::Icosahedron, PlatonicKind::Dodecahedron}) {
      const auto p = platonic(kind);
      if (p.size() == n)
        seeds.emplace_back(p.points().begin(), p.points().end());
    }
  }
  if (std::holds_alternative<LennardJones>(model) && n >= 2) {
    for (int shells = 1; mackay_count(shells - 1) <= static_cast<int>(n) + 1 && shells <= 6; ++shells) {
      const int m = mackay_count(shells);
      const auto full = mackay_icosahedron(shells);
      const auto &pts = full.points();
      if (m == static_cast<int>(n))
        seeds.emplace_back(pts.begin(), pts.end());
      if (m == static_cast<int>(n) + 1) {
        seeds.emplace_back(pts.begin() + 1, pts.end()); // hollow: centre removed
        std::vector<Vec3> minus_vertex(pts.begin(), pts.end());
        minus_vertex.erase(minus_vertex.begin() + mackay_count(shells - 1)); // an outer vertex
        seeds.push_back(std::move(minus_vertex));
      }
    }
    if (s.shell_seeds && n <= static_cast<std::size_t>(mackay_count(6))) {
      const auto ico = detail::icosahedron_raw();
      seeds.push_back(partial_mackay(n, ico.front()));
      seeds.push_back(partial_mackay(n, ico[0] + ico[1] + ico[2]));
      seeds.push_back(partial_mackay(n, ico[0] + ico[1]));
    }
  }
  // drop exact duplicates (e.g. partial shells that coincide with a complete icosahedron)
  std::vector<std::vector<Vec3>> unique;
  for (auto &sd : seeds) {
    if (sd.size() != n)
      continue;
    bool dup = false;
    for (const auto &u : unique)
      if (u == sd)
        dup = true;
    if (!dup)
      unique.push_back(std::move(sd));
  }
  return unique;
}

// ---------------------------------------------------------------------------
// census keys

/// Hull signature when the hull exists, otherwise a digest of the sorted
/// pair-distance multiset (rounded to 1e-6 after RMS normalisation).
inline std::string census_signature(std::span<const Vec3> pts) {
  if (pts.size() >= 4) {
    try {
      return "H" + combinatorial_signature(convex_hull(pts)).digest();
    } catch (const DegenerateHull &) {
    } catch (const DuplicatePoints &) {
    }
  }
  const auto cloud = normalized_cloud(pts);
  std::vector<long long> d;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      d.push_back(std::llround(distance(cloud[i], cloud[j]) * 1e6));
  std::sort(d.begin(), d.end());
  CombinatorialSignature sig;
  for (long long v : d)
    sig.code.append(reinterpret_cast<const char *>(&v), sizeof v);
  return "D" + sig.digest();
}

inline bool lexicographically_less(std::span<const Vec3> a, std::span<const Vec3> b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    const auto ta = std::tie(a[i].x, a[i].y, a[i].z);
    const auto tb = std::tie(b[i].x, b[i].y, b[i].z);
    if (ta != tb)
      return ta < tb;
  }
  return a.size() < b.size();
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0)
    return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs `work(i)` for i in [0, count) on up to `threads` workers.
template <class Work>
void parallel_for(std::size_t count, unsigned threads, Work &&work) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
        work(i);
    });
  for (auto &th : pool)
    th.join();
}

struct StartOutcome {
  LocalResult local;
  std::string signature;
};

inline void check_model_for_run(const EnergyModel &model, std::size_t n, Constraint c) {
  if (!accepts(model, c))
    throw ConstraintMismatch(model_name(model) + " does not accept the '" + std::string(to_string(c)) +
                             "' constraint");
  if (n < min_points(model))
    throw InvalidArgument(model_name(model) + " needs n >= " + std::to_string(min_points(model)));
}

} // namespace detail

/// Local minimization from `start` under the start's own constraint.
inline MinimizationRun local_minimize(const EnergyModel &model, const Configuration &start,
                                      const OptimizerSettings &settings = {}) {
  if (!is_smooth(model))
    throw Unsupported("local_minimize needs a smooth model; use tammes_solve for the maximin objective");
  detail::check_model_for_run(model, start.size(), start.constraint());
  detail::check_distinct(start.points());
  const auto t0 = std::chrono::steady_clock::now();
  auto local = detail::conjugate_gradient(detail::model_objective(model),
                                          std::vector<Vec3>(start.points().begin(), start.points().end()),
                                          start.constraint(), settings);
  MinimizationRun run;
  run.model = model;
  run.n = start.size();
  run.constraint = start.constraint();
  run.settings = settings;
  run.best_energy = local.energy;
  run.start_energy = local.start_energy;
  run.gradient_norm = local.gradient_norm;
  run.iterations = run.total_iterations = local.iterations;
  run.starts_completed = 1;
  run.converged = local.converged;
  run.converged_starts = local.converged ? 1 : 0;
  run.best = Configuration(std::move(local.x), start.constraint());
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

/// Seeded multi-start search: structured seeds first, then random starts; the
/// merged result does not depend on the number of worker threads.
inline MinimizationRun multi_start(const EnergyModel &model, std::size_t n, const OptimizerSettings &settings,
                                   std::optional<Constraint> constraint = std::nullopt) {
  if (!is_smooth(model))
    throw Unsupported("multi_start needs a smooth model; use tammes_solve for the maximin objective");
  const Constraint c = constraint.value_or(default_constraint(model));
  detail::check_model_for_run(model, n, c);
  const auto t0 = std::chrono::steady_clock::now();

  auto seeds = detail::structured_seeds(model, n, c, settings);
  const std::size_t random_count = static_cast<std::size_t>(settings.effective_starts(n));
  const std::size_t total = seeds.size() + random_count;
  const auto objective = detail::model_objective(model);

  std::vector<detail::StartOutcome> outcomes(total);
  detail::parallel_for(total, settings.threads, [&](std::size_t i) {
    std::vector<Vec3> start;
    if (i < seeds.size()) {
      start = seeds[i];
    } else {
      auto rng = detail::start_rng(settings.seed, i - seeds.size());
      start = detail::random_start(model, n, c, rng);
    }
    auto &o = outcomes[i];
    o.local = detail::conjugate_gradient(objective, std::move(start), c, settings);
    o.signature = detail::census_signature(o.local.x);
  });

  MinimizationRun run;
  run.model = model;
  run.n = n;
  run.constraint = c;
  run.settings = settings;
  run.starts_completed = total;
  std::optional<std::size_t> best;
  auto better = [&](std::size_t a, std::size_t b) {
    const auto &la = outcomes[a].local, &lb = outcomes[b].local;
    if (la.energy != lb.energy)
      return la.energy < lb.energy;
    return detail::lexicographically_less(la.x, lb.x);
  };
  std::optional<std::size_t> best_any;
  std::map<std::tuple<bool, long long, std::string>, std::size_t> index;
  for (std::size_t i = 0; i < total; ++i) {
    const auto &o = outcomes[i];
    run.total_iterations += o.local.iterations;
    if (o.local.converged) {
      ++run.converged_starts;
      if (!best || better(i, *best))
        best = i;
    }
    if (!best_any || better(i, *best_any))
      best_any = i;
    if (!std::isfinite(o.local.energy))
      continue;
    const auto key = std::make_tuple(!o.local.converged, std::llround(o.local.energy * 1e6), o.signature);
    auto [it, inserted] = index.emplace(key, run.census.size());
    if (inserted)
      run.census.push_back({o.signature, o.local.energy, 0, o.local.converged});
    ++run.census[it->second].count;
  }
  std::sort(run.census.begin(), run.census.end(), [](const CensusEntry &a, const CensusEntry &b) {
    return std::tie(a.energy, a.signature, a.converged) < std::tie(b.energy, b.signature, b.converged);
  });
  const std::size_t pick = best ? *best : *best_any;
  const auto &chosen = outcomes[pick].local;
  run.converged = best.has_value();
  run.best = Configuration(chosen.x, c);
  run.best_energy = chosen.energy;
  run.start_energy = chosen.start_energy;
  run.gradient_norm = chosen.gradient_norm;
  run.iterations = chosen.iterations;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

/// Multi-start run whose census of distinct converged minima is the product.
inline MinimizationRun minima_census(const EnergyModel &model, std::size_t n, const OptimizerSettings &settings,
                                     std::optional<Constraint> constraint = std::nullopt) {
  return multi_start(model, n, settings, constraint);
}

/// Number of distinct converged minima in a census.
inline std::size_t distinct_minima(const MinimizationRun &run) {
  return static_cast<std::size_t>(
      std::count_if(run.census.begin(), run.census.end(), [](const CensusEntry &e) { return e.converged; }));
}

} // namespace polyform
