#pragma once

#include <chrono>
#include <cmath>
#include <vector>

#include "polyform/optimize.hpp"

namespace polyform {

namespace detail {

/// log(E_p)/p, evaluated relative to the current minimum distance so that
/// p = 1024 neither overflows nor underflows. Same minimizers as E_p.
inline double log_riesz(double p, std::span<const Vec3> pts, std::span<Vec3> grad) {
  const std::size_t n = pts.size();
  const double rmin = min_pair_distance(pts);
  if (!(rmin > 0.0))
    return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      sum += std::pow(rmin / distance(pts[i], pts[j]), p);
  if (!grad.empty()) {
    std::fill(grad.begin(), grad.end(), Vec3{});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const Vec3 d = pts[i] - pts[j];
        const double r = norm(d);
        const double w = std::pow(rmin / r, p) / sum;
        const Vec3 g = d * (-w / (r * r));
        grad[i] += g;
        grad[j] -= g;
      }
  }
  return std::log(sum) / p - std::log(rmin);
}

struct PolishResult {
  double min_distance = 0.0;
  std::vector<double> history;
  bool converged = false;
};

/// Pushes apart the pairs realizing the minimum distance, halving the step on
/// failure; every accepted move strictly raises the minimum distance.
inline PolishResult maximin_polish(std::vector<Vec3> &x, std::size_t max_rounds = 200000) {
  const std::size_t n = x.size();
  PolishResult out;
  double d = min_pair_distance(x);
  out.history.push_back(d);
  double step = 1e-3 * d;
  std::vector<Vec3> trial(n), dir(n);
  for (std::size_t round = 0; round < max_rounds; ++round) {
    std::fill(dir.begin(), dir.end(), Vec3{});
    const double cutoff = d + 1e-12;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        const Vec3 delta = x[i] - x[j];
        const double r = norm(delta);
        if (r <= cutoff) {
          dir[i] += delta / r;
          dir[j] -= delta / r;
        }
      }
    for (std::size_t i = 0; i < n; ++i) {
      Vec3 t = dir[i] - x[i] * dot(dir[i], x[i]);
      const double len = norm(t);
      trial[i] = len > 0.0 ? normalized(x[i] + t * (step / len)) : x[i];
    }
    const double dt = min_pair_distance(trial);
    if (dt > d) {
      const double gain = dt - d;
      x.swap(trial);
      d = dt;
      out.history.push_back(d);
      if (gain < 1e-10) {
        out.converged = true;
        break;
      }
      step *= 1.5;
    } else {
      step *= 0.5;
      if (step < 1e-15) {
        out.converged = true;
        break;
      }
    }
  }
  out.min_distance = d;
  return out;
}

inline std::vector<double> tammes_exponents() {
  std::vector<double> ps;
  for (double p = 2.0; p <= 1024.0; p *= 2.0)
    ps.push_back(p);
  return ps;
}

} // namespace detail

/// Tammes problem: Riesz continuation p = 2, 4, ..., 1024 from each seeded
/// start, then a maximin polish. best_energy is -(minimum distance).
inline MinimizationRun tammes_solve(std::size_t n, const OptimizerSettings &settings) {
  if (n < 2)
    throw InvalidArgument("tammes_solve needs n >= 2");
  const auto t0 = std::chrono::steady_clock::now();
  const EnergyModel model = MaximinDistance{};
  auto seeds = detail::structured_seeds(RieszSphere{}, n, Constraint::UnitSphere, settings);
  const std::size_t total = seeds.size() + static_cast<std::size_t>(settings.effective_starts(n));

  struct Outcome {
    std::vector<Vec3> x;
    double min_distance = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double start_energy = 0.0;
    std::string signature;
  };
  std::vector<Outcome> outcomes(total);
  const auto exponents = detail::tammes_exponents();
  detail::parallel_for(total, settings.threads, [&](std::size_t i) {
    std::vector<Vec3> x;
    if (i < seeds.size()) {
      x = seeds[i];
    } else {
      auto rng = detail::start_rng(settings.seed, i - seeds.size());
      x = detail::random_start(RieszSphere{}, n, Constraint::UnitSphere, rng);
    }
    Outcome &o = outcomes[i];
    o.start_energy = -min_pair_distance(x);
    bool stages_ok = true;
    for (double p : exponents) {
      auto local = detail::conjugate_gradient(
          [p](std::span<const Vec3> pts, std::span<Vec3> g) { return detail::log_riesz(p, pts, g); }, std::move(x),
          Constraint::UnitSphere, settings);
      x = std::move(local.x);
      o.iterations += local.iterations;
      stages_ok = local.converged;
    }
    auto polish = detail::maximin_polish(x);
    o.min_distance = polish.min_distance;
    // the p = 1024 stage rarely reaches 1e-10 in the log objective; the polish decides
    o.converged = polish.converged || stages_ok;
    o.x = std::move(x);
    o.signature = detail::census_signature(o.x);
  });

  MinimizationRun run;
  run.model = model;
  run.n = n;
  run.constraint = Constraint::UnitSphere;
  run.settings = settings;
  run.starts_completed = total;
  std::optional<std::size_t> best;
  std::map<std::pair<long long, std::string>, std::size_t> index;
  for (std::size_t i = 0; i < total; ++i) {
    const Outcome &o = outcomes[i];
    run.total_iterations += o.iterations;
    if (o.converged)
      ++run.converged_starts;
    if (!best || o.min_distance > outcomes[*best].min_distance ||
        (o.min_distance == outcomes[*best].min_distance && detail::lexicographically_less(o.x, outcomes[*best].x)))
      best = i;
    const auto key = std::make_pair(std::llround(-o.min_distance * 1e6), o.signature);
    auto [it, inserted] = index.emplace(key, run.census.size());
    if (inserted)
      run.census.push_back({o.signature, -o.min_distance, 0, o.converged});
    ++run.census[it->second].count;
  }
  std::sort(run.census.begin(), run.census.end(), [](const CensusEntry &a, const CensusEntry &b) {
    return std::tie(a.energy, a.signature) < std::tie(b.energy, b.signature);
  });
  const Outcome &chosen = outcomes[*best];
  run.best = Configuration(chosen.x, Constraint::UnitSphere);
  run.min_distance = chosen.min_distance;
  run.best_energy = -chosen.min_distance;
  run.start_energy = chosen.start_energy;
  run.iterations = chosen.iterations;
  run.converged = chosen.converged;
  run.gradient_norm = 0.0;
  run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

} // namespace polyform
