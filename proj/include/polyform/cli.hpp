#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "polyform/analysis.hpp"
#include "polyform/generators.hpp"
#include "polyform/io.hpp"
#include "polyform/optimize.hpp"
#include "polyform/shells.hpp"
#include "polyform/symmetry.hpp"
#include "polyform/tammes.hpp"

namespace polyform::cli {

enum ExitCode : int { Ok = 0, Usage = 2, NotConverged = 3, BoundViolated = 4 };

/// Everything a subcommand needs. JSON config files use the same key names.
struct RunSpec {
  std::string model = "thomson";
  double p = 1.0;
  int n = 0;
  int n_min = 0, n_max = 0;
  std::optional<Constraint> constraint;
  OptimizerSettings settings;
  double symmetry_tolerance = kDefaultSymmetryTolerance;
  double shell_gap = kDefaultShellGap;
  std::string bound = "toth";
  int samples = 10000;
  std::string run_path;  // export input
  std::string out;       // JSON / CSV output, stdout when empty
  std::string off;       // hull OFF
  std::string dual_off;  // dual OFF
  std::string json_out;  // configuration JSON (export)
  std::string csv_out;   // point list CSV (export)
};

/// Applies the keys present in `j` to `spec` (config-file layer).
inline void apply_config(RunSpec &spec, const json &j) {
  spec.model = j.value("model", spec.model);
  spec.p = j.value("p", spec.p);
  spec.n = j.value("n", spec.n);
  spec.n_min = j.value("n_min", spec.n_min);
  spec.n_max = j.value("n_max", spec.n_max);
  if (j.contains("constraint")) {
    const auto c = parse_constraint(j.at("constraint").get<std::string>());
    if (!c)
      throw InvalidArgument("unknown constraint '" + j.at("constraint").get<std::string>() + "'");
    spec.constraint = *c;
  }
  spec.settings = settings_from_json(j, spec.settings);
  spec.settings.threads = j.value("threads", spec.settings.threads);
  spec.symmetry_tolerance = j.value("symmetry_tolerance", spec.symmetry_tolerance);
  spec.shell_gap = j.value("shell_gap", spec.shell_gap);
  spec.bound = j.value("bound", spec.bound);
  spec.samples = j.value("samples", spec.samples);
  spec.run_path = j.value("run", spec.run_path);
  spec.out = j.value("out", spec.out);
  spec.off = j.value("off", spec.off);
  spec.dual_off = j.value("dual_off", spec.dual_off);
  spec.json_out = j.value("json", spec.json_out);
  spec.csv_out = j.value("csv", spec.csv_out);
}

namespace detail {

inline void write_text(const std::string &path, const std::string &text, std::ostream &fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw InvalidArgument("cannot write '" + path + "'");
  f << text;
}

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Minimizes `model` at size n under the spec's constraint (or the model default).
inline MinimizationRun solve(const RunSpec &spec, const EnergyModel &model, int n) {
  if (n < static_cast<int>(min_points(model)))
    throw InvalidArgument(model_name(model) + " needs n >= " + std::to_string(min_points(model)));
  if (std::holds_alternative<MaximinDistance>(model)) {
    if (spec.constraint && *spec.constraint != Constraint::UnitSphere)
      throw ConstraintMismatch("tammes runs on the unit sphere only");
    return tammes_solve(static_cast<std::size_t>(n), spec.settings);
  }
  return multi_start(model, static_cast<std::size_t>(n), spec.settings, spec.constraint);
}

struct Derived {
  std::optional<Polyhedron> hull;
  std::optional<CombinatorialSignature> signature;
  SymmetryReport symmetry;
  ShellDecomposition shells;
};

inline Derived derive(const RunSpec &spec, const MinimizationRun &run) {
  Derived d;
  if (run.best.size() >= 4) {
    try {
      d.hull = convex_hull(run.best);
      d.signature = combinatorial_signature(*d.hull);
    } catch (const DegenerateHull &) {
    }
  }
  d.symmetry = detect_point_group(run.best, spec.symmetry_tolerance);
  d.shells = shell_decomposition(run.best, spec.shell_gap);
  return d;
}

inline json shells_json(const ShellDecomposition &s) {
  json a = json::array();
  for (std::size_t k : s.sizes())
    a.push_back(k);
  return a;
}

inline std::string shells_text(const ShellDecomposition &s) {
  std::string out;
  for (std::size_t k : s.sizes())
    out += (out.empty() ? "" : "+") + std::to_string(k);
  return out;
}

inline void check_n(int n) {
  if (n < 2)
    throw InvalidArgument("n must be at least 2");
}

inline std::pair<int, int> range_of(const RunSpec &spec, int lowest) {
  int lo = spec.n_min, hi = spec.n_max;
  if (spec.n > 0 && lo == 0 && hi == 0)
    lo = hi = spec.n;
  if (lo < lowest || hi < lo)
    throw InvalidArgument("invalid n range " + std::to_string(lo) + ".." + std::to_string(hi));
  return {lo, hi};
}

} // namespace detail

/// Single run: JSON record to spec.out (stdout if empty), optional hull OFF.
inline int cmd_minimize(const RunSpec &spec, std::ostream &out = std::cout) {
  detail::check_n(spec.n);
  const EnergyModel model = parse_model(spec.model, spec.p);
  const auto run = detail::solve(spec, model, spec.n);
  const auto d = detail::derive(spec, run);
  json record = run_to_json(run);
  record["symmetry"] = symmetry_to_json(d.symmetry);
  if (d.hull)
    record["hull"] = polyhedron_summary(*d.hull, *d.signature);
  record["shells"] = detail::shells_json(d.shells);
  detail::write_text(spec.out, record.dump(2) + "\n", out);
  if (!spec.off.empty()) {
    if (!d.hull)
      throw DegenerateHull("no 3D hull for this configuration; cannot write OFF");
    detail::write_text(spec.off, to_off(*d.hull), out);
  }
  return run.converged ? Ok : NotConverged;
}

inline const char *kTableHeader = "n,energy,symmetry_label,hull_V,hull_F,hull_E,signature,starts,seed,shells\n";

/// CSV sweep over [n_min, n_max].
inline int cmd_table(const RunSpec &spec, std::ostream &out = std::cout) {
  const auto [lo, hi] = detail::range_of(spec, 2);
  const EnergyModel model = parse_model(spec.model, spec.p);
  std::string csv = kTableHeader;
  bool all_converged = true;
  for (int n = lo; n <= hi; ++n) {
    const auto run = detail::solve(spec, model, n);
    const auto d = detail::derive(spec, run);
    all_converged = all_converged && run.converged;
    csv += std::to_string(n) + "," + detail::fmt(run.best_energy) + "," + d.symmetry.label.str() + ",";
    if (d.hull)
      csv += std::to_string(d.hull->vertices.size()) + "," + std::to_string(d.hull->faces.size()) + "," +
             std::to_string(d.hull->edge_count()) + "," + d.signature->digest();
    else
      csv += ",,,";
    csv += "," + std::to_string(run.starts_completed) + "," + std::to_string(spec.settings.seed) + "," +
           detail::shells_text(d.shells) + "\n";
  }
  detail::write_text(spec.out, csv, out);
  return all_converged ? Ok : NotConverged;
}

/// Smallest |D| over random configurations (n = 2..10, free / plane / sphere).
inline double sample_min_modulus(int samples, std::uint64_t seed) {
  double lowest = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    auto rng = polyform::detail::start_rng(seed, static_cast<std::uint64_t>(s));
    const auto n = static_cast<std::size_t>(2 + s % 9);
    const Constraint c = std::array{Constraint::Free, Constraint::Plane, Constraint::UnitSphere}[s % 3];
    const auto pts = polyform::detail::random_start(AtiyahDet{}, n, c, rng);
    lowest = std::min(lowest, atiyah_determinant(pts).modulus);
  }
  return lowest;
}

/// Bound / estimate reports; exit 4 when any row is on the wrong side.
inline int cmd_bounds(const RunSpec &spec, std::ostream &out = std::cout) {
  json rows = json::array();
  bool violated = false;
  auto add = [&](const BoundReport &r) {
    violated = violated || !r.satisfied;
    rows.push_back(bound_to_json(r));
  };
  if (spec.bound == "atiyah") {
    if (spec.samples < 1)
      throw InvalidArgument("--samples must be positive");
    add(make_bound_report("atiyah_modulus", 0, 1.0 - 1e-9, sample_min_modulus(spec.samples, spec.settings.seed),
                          BoundSense::Above));
  } else {
    const std::string &b = spec.bound;
    if (b != "toth" && b != "central" && b != "monopole" && b != "geomfit")
      throw InvalidArgument("unknown bound '" + b + "' (toth, central, monopole, geomfit, atiyah)");
    const auto [lo, hi] = detail::range_of(spec, b == "central" ? 1 : 2);
    const EnergyModel model = b == "toth"      ? EnergyModel{SumSeparation{}}
                              : b == "central" ? EnergyModel{CentralCoulomb{}}
                              : b == "monopole" ? EnergyModel{MonopoleLinear{}}
                                                : EnergyModel{AtiyahDet{}};
    for (int n = lo; n <= hi; ++n) {
      if (b == "central" && n == 1) {
        add(make_bound_report("central", 1, central_lower_bound(1), 0.0, BoundSense::Above));
        continue;
      }
      const auto run = detail::solve(spec, model, n);
      if (b == "toth") {
        add(make_bound_report("toth", n, toth_lower_bound(n), run.best_energy, BoundSense::StrictlyAbove));
      } else if (b == "central") {
        add(make_bound_report("central", n, central_lower_bound(n), run.best_energy, BoundSense::Above));
      } else if (b == "monopole") {
        const auto est = monopole_estimates(n);
        add(make_bound_report("monopole_radius", n, est.radius, radial_profile(run.best.points()).mean,
                              BoundSense::Within, 0.05));
        add(make_bound_report("monopole_energy", n, est.energy, run.best_energy, BoundSense::Within, 0.02));
      } else {
        add(make_bound_report("geomfit", n, geom_energy_fit(n), run.best_energy, BoundSense::Within, 0.15));
      }
    }
  }
  detail::write_text(spec.out, rows.dump(2) + "\n", out);
  return violated ? BoundViolated : Ok;
}

/// Re-exports a stored run: hull / dual OFF, configuration JSON, point CSV.
/// A summary (with the fullerene check of the dual) goes to `out`.
inline int cmd_export(const RunSpec &spec, std::ostream &out = std::cout) {
  if (spec.run_path.empty())
    throw InvalidArgument("export needs --run <record.json>");
  const MinimizationRun run = run_from_json(read_json_file(spec.run_path));
  json summary{{"n", run.n}, {"model", model_to_json(run.model)}};
  if (!spec.off.empty() || !spec.dual_off.empty()) {
    const Polyhedron hull = convex_hull(run.best);
    summary["hull"] = polyhedron_summary(hull, combinatorial_signature(hull));
    if (!spec.off.empty())
      detail::write_text(spec.off, to_off(hull), out);
    if (!spec.dual_off.empty()) {
      const Polyhedron d = dual(hull);
      summary["dual"] = polyhedron_summary(d, combinatorial_signature(d));
      summary["dual_fullerene"] = fullerene_to_json(validate_fullerene(d));
      detail::write_text(spec.dual_off, to_off(d), out);
    }
  }
  if (!spec.json_out.empty())
    detail::write_text(spec.json_out, configuration_to_json(run.best).dump(2) + "\n", out);
  if (!spec.csv_out.empty()) {
    std::string csv = "index,x,y,z\n";
    for (std::size_t i = 0; i < run.best.size(); ++i) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g\n", i, run.best[i].x, run.best[i].y, run.best[i].z);
      csv += buf;
    }
    detail::write_text(spec.csv_out, csv, out);
  }
  detail::write_text(spec.out, summary.dump(2) + "\n", out);
  return Ok;
}

/// Runs `body`, mapping library errors to exit code 2 with a message on `err`.
template <class Body>
int guarded(Body &&body, std::ostream &err = std::cerr) {
  try {
    return body();
  } catch (const Error &e) {
    err << "polyform: " << e.what() << "\n";
    return Usage;
  } catch (const json::exception &e) {
    err << "polyform: malformed JSON: " << e.what() << "\n";
    return Usage;
  }
}

} // namespace polyform::cli
