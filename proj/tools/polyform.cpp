// polyform: minimize, tabulate, bound-check and export point configurations.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "polyform/cli.hpp"

namespace {

using polyform::cli::RunSpec;

/// Options shared by the subcommands. Values only override the config file
/// when the flag was actually given.
struct Flags {
  std::string config;
  std::string model, constraint, bound, run, out, off, dual_off, json_out, csv_out;
  double p = 1.0, tol = 0.0, symmetry_tol = 0.0, shell_gap = 0.0;
  int n = 0, n_min = 0, n_max = 0, starts = 0, max_iter = 0, samples = 0;
  std::uint64_t seed = 0;
  bool no_structured = false, no_shell_seeds = false;
  std::map<std::string, CLI::Option *> given;

  void add_common(CLI::App *app) {
    given["config"] = app->add_option("--config", config, "JSON file with RunSpec keys; flags override it");
    given["model"] = app->add_option("--model", model, "thomson, riesz, sumsep, tammes, central, monopole, lj, atiyah, triangle");
    given["p"] = app->add_option("--p", p, "Riesz exponent (model riesz)");
    given["constraint"] = app->add_option("--constraint", constraint, "sphere, free, plane or disk");
    given["starts"] = app->add_option("--starts", starts, "random starts (default max(50, 10 n))");
    given["seed"] = app->add_option("--seed", seed, "master seed");
    given["tol"] = app->add_option("--tol", tol, "gradient tolerance per point");
    given["max_iter"] = app->add_option("--max-iter", max_iter, "iterations per start");
    given["no_structured"] = app->add_flag("--no-structured", no_structured, "skip Platonic / Mackay seeds");
    given["no_shell_seeds"] = app->add_flag("--no-shell-seeds", no_shell_seeds, "skip partial-shell seeds");
    given["symmetry_tol"] = app->add_option("--symmetry-tol", symmetry_tol, "point-group tolerance (unit RMS radius)");
    given["shell_gap"] = app->add_option("--shell-gap", shell_gap, "radius ratio that starts a new shell");
    given["out"] = app->add_option("--out", out, "output file (default stdout)");
  }
  void add_range(CLI::App *app) {
    given["n"] = app->add_option("--n", n, "single n");
    given["n_min"] = app->add_option("--n-min", n_min, "first n of the sweep");
    given["n_max"] = app->add_option("--n-max", n_max, "last n of the sweep");
  }

  bool has(const std::string &key) const {
    const auto it = given.find(key);
    return it != given.end() && it->second->count() > 0;
  }

  RunSpec resolve() const {
    RunSpec spec;
    if (has("config"))
      polyform::cli::apply_config(spec, polyform::read_json_file(config));
    if (has("model"))
      spec.model = model;
    if (has("p"))
      spec.p = p;
    if (has("constraint")) {
      const auto c = polyform::parse_constraint(constraint);
      if (!c)
        throw polyform::InvalidArgument("unknown constraint '" + constraint + "'");
      spec.constraint = *c;
    }
    if (has("n"))
      spec.n = n;
    if (has("n_min"))
      spec.n_min = n_min;
    if (has("n_max"))
      spec.n_max = n_max;
    if (has("starts")) {
      if (starts < 1)
        throw polyform::InvalidArgument("--starts must be at least 1");
      spec.settings.start_count = starts;
    }
    if (has("seed"))
      spec.settings.seed = seed;
    if (has("tol")) {
      if (!(tol > 0.0))
        throw polyform::InvalidArgument("--tol must be positive");
      spec.settings.gradient_tolerance = tol;
    }
    if (has("max_iter"))
      spec.settings.max_iterations = max_iter;
    if (has("no_structured"))
      spec.settings.structured_seeds = false;
    if (has("no_shell_seeds"))
      spec.settings.shell_seeds = false;
    if (has("symmetry_tol"))
      spec.symmetry_tolerance = symmetry_tol;
    if (has("shell_gap"))
      spec.shell_gap = shell_gap;
    if (has("bound"))
      spec.bound = bound;
    if (has("samples"))
      spec.samples = samples;
    if (has("run"))
      spec.run_path = run;
    if (has("out"))
      spec.out = out;
    if (has("off"))
      spec.off = off;
    if (has("dual_off"))
      spec.dual_off = dual_off;
    if (has("json"))
      spec.json_out = json_out;
    if (has("csv"))
      spec.csv_out = csv_out;
    if (const char *env = std::getenv("POLYFORM_THREADS")) {
      try {
        spec.settings.threads = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception &) {
        throw polyform::InvalidArgument("POLYFORM_THREADS must be a non-negative integer");
      }
    }
    return spec;
  }
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Minimal-energy point configurations: search, symmetry, bounds and export"};
  app.require_subcommand(1);
  Flags flags;

  auto *minimize = app.add_subcommand("minimize", "multi-start minimization; writes a JSON run record");
  flags.add_common(minimize);
  flags.add_range(minimize);
  flags.given["off"] = minimize->add_option("--off", flags.off, "write the hull as OFF");

  auto *table = app.add_subcommand("table", "CSV sweep over --n-min..--n-max");
  Flags table_flags;
  table_flags.add_common(table);
  table_flags.add_range(table);

  auto *bounds = app.add_subcommand("bounds", "check closed-form bounds and estimates against minima");
  Flags bound_flags;
  bound_flags.add_common(bounds);
  bound_flags.add_range(bounds);
  bound_flags.given["bound"] = bounds->add_option("--bound", bound_flags.bound, "toth, central, monopole, geomfit, atiyah");
  bound_flags.given["samples"] = bounds->add_option("--samples", bound_flags.samples, "random configurations (atiyah)");

  auto *exporter = app.add_subcommand("export", "re-export a stored run record");
  Flags export_flags;
  export_flags.given["config"] = exporter->add_option("--config", export_flags.config, "JSON file with RunSpec keys");
  export_flags.given["run"] = exporter->add_option("--run", export_flags.run, "run record written by minimize");
  export_flags.given["off"] = exporter->add_option("--off", export_flags.off, "hull OFF");
  export_flags.given["dual_off"] = exporter->add_option("--dual-off", export_flags.dual_off, "dual polyhedron OFF");
  export_flags.given["json"] = exporter->add_option("--json", export_flags.json_out, "configuration JSON");
  export_flags.given["csv"] = exporter->add_option("--csv", export_flags.csv_out, "point list CSV");
  export_flags.given["out"] = exporter->add_option("--out", export_flags.out, "summary JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return polyform::cli::Usage;
  }

  return polyform::cli::guarded([&] {
    if (minimize->parsed())
      return polyform::cli::cmd_minimize(flags.resolve());
    if (table->parsed())
      return polyform::cli::cmd_table(table_flags.resolve());
    if (bounds->parsed())
      return polyform::cli::cmd_bounds(bound_flags.resolve());
    return polyform::cli::cmd_export(export_flags.resolve());
  });
}
