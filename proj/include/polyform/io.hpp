#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp" // nlohmann/json, vendored

#include "polyform/analysis.hpp"
#include "polyform/energies.hpp"
#include "polyform/geometry.hpp"
#include "polyform/optimize.hpp"
#include "polyform/symmetry.hpp"

namespace polyform {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// models

/// Model from its command-line name; `p` is only read for "riesz".
inline EnergyModel parse_model(std::string_view name, double p = 1.0) {
  if (name == "thomson")
    return RieszSphere{1.0};
  if (name == "riesz") {
    if (!(p > 0.0) || !std::isfinite(p))
      throw InvalidArgument("riesz exponent must be a positive finite number");
    return RieszSphere{p};
  }
  if (name == "sumsep")
    return SumSeparation{};
  if (name == "tammes")
    return MaximinDistance{};
  if (name == "central")
    return CentralCoulomb{};
  if (name == "monopole")
    return MonopoleLinear{};
  if (name == "lj")
    return LennardJones{};
  if (name == "atiyah")
    return AtiyahDet{};
  if (name == "triangle")
    return TriangleApprox{};
  throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

inline json model_to_json(const EnergyModel &model) {
  json j;
  if (const auto *r = std::get_if<RieszSphere>(&model)) {
    j["name"] = r->p == 1.0 ? "thomson" : "riesz";
    j["p"] = r->p;
  } else {
    j["name"] = model_name(model);
  }
  return j;
}

inline EnergyModel model_from_json(const json &j) {
  return parse_model(j.at("name").get<std::string>(), j.value("p", 1.0));
}

// ---------------------------------------------------------------------------
// geometry

inline json point_to_json(const Vec3 &p) { return json::array({p.x, p.y, p.z}); }

inline Vec3 point_from_json(const json &j) {
  if (!j.is_array() || j.size() != 3)
    throw InvalidArgument("a point must be a 3-element array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline json configuration_to_json(const Configuration &c) {
  json pts = json::array();
  for (const Vec3 &p : c.points())
    pts.push_back(point_to_json(p));
  return {{"constraint", std::string(to_string(c.constraint()))}, {"points", std::move(pts)}};
}

/// Parses {"constraint": str, "points": [[x,y,z], ...]} and validates it.
inline Configuration configuration_from_json(const json &j) {
  const auto c = parse_constraint(j.at("constraint").get<std::string>());
  if (!c)
    throw InvalidArgument("unknown constraint '" + j.at("constraint").get<std::string>() + "'");
  std::vector<Vec3> pts;
  for (const auto &p : j.at("points"))
    pts.push_back(point_from_json(p));
  return Configuration::checked(std::move(pts), *c);
}

inline json polyhedron_summary(const Polyhedron &p, const CombinatorialSignature &sig) {
  json census = json::object();
  for (const auto &[size, count] : p.face_census())
    census[std::to_string(size)] = count;
  return {{"V", p.vertices.size()}, {"F", p.faces.size()}, {"E", p.edge_count()},
          {"face_census", std::move(census)}, {"signature", sig.digest()}};
}

// ---------------------------------------------------------------------------
// reports

inline json symmetry_to_json(const SymmetryReport &r) {
  json elements = json::array();
  for (const auto &e : r.elements) {
    json el{{"type", std::string(to_string(e.kind))}, {"order", e.order}};
    if (e.kind != SymmetryElement::Kind::Inversion)
      el["axis"] = point_to_json(e.axis);
    elements.push_back(std::move(el));
  }
  json j{{"label", r.label.str()},
         {"rotation_order", r.rotation_order},
         {"group_size", r.group_size},
         {"elements", std::move(elements)},
         {"tolerance", r.tolerance},
         {"unstable", r.unstable}};
  if (r.alternate)
    j["alternate_label"] = r.alternate->str();
  return j;
}

inline json bound_to_json(const BoundReport &b) {
  return {{"bound", b.name},    {"n", b.n},
          {"bound_value", b.bound}, {"measured", b.measured},
          {"satisfied", b.satisfied}, {"relative_gap", b.relative_gap}};
}

inline json fullerene_to_json(const FullereneReport &f) {
  return {{"is_trivalent", f.is_trivalent}, {"pentagons", f.pentagons}, {"hexagons", f.hexagons},
          {"other_faces", f.other_faces},   {"V", f.V},                 {"F", f.F},
          {"E", f.E},                       {"identities_hold", f.identities_hold}};
}

inline json settings_to_json(const OptimizerSettings &s) {
  return {{"gradient_tolerance", s.gradient_tolerance},
          {"max_iterations", s.max_iterations},
          {"starts", s.start_count},
          {"seed", s.seed},
          {"initial_step", s.initial_step},
          {"armijo", s.armijo},
          {"curvature", s.curvature},
          {"structured_seeds", s.structured_seeds},
          {"shell_seeds", s.shell_seeds}};
}

/// Reads the keys written by settings_to_json; absent keys keep `base` values.
inline OptimizerSettings settings_from_json(const json &j, OptimizerSettings base = {}) {
  base.gradient_tolerance = j.value("gradient_tolerance", base.gradient_tolerance);
  base.max_iterations = j.value("max_iterations", base.max_iterations);
  base.start_count = j.value("starts", base.start_count);
  base.seed = j.value("seed", base.seed);
  base.initial_step = j.value("initial_step", base.initial_step);
  base.armijo = j.value("armijo", base.armijo);
  base.curvature = j.value("curvature", base.curvature);
  base.structured_seeds = j.value("structured_seeds", base.structured_seeds);
  base.shell_seeds = j.value("shell_seeds", base.shell_seeds);
  return base;
}

/// Run record. Wall time is left out so identical runs serialize identically.
inline json run_to_json(const MinimizationRun &run) {
  json census = json::array();
  for (const auto &e : run.census) {
    json row{{"signature", e.signature}, {"energy", e.energy}, {"count", e.count}};
    if (!e.converged)
      row["converged"] = false;
    census.push_back(std::move(row));
  }
  json j{{"model", model_to_json(run.model)},
         {"n", run.n},
         {"constraint", std::string(to_string(run.constraint))},
         {"seed", run.settings.seed},
         {"settings", settings_to_json(run.settings)},
         {"converged", run.converged},
         {"best_energy", run.best_energy},
         {"start_energy", run.start_energy},
         {"gradient_norm", run.gradient_norm},
         {"iterations", run.iterations},
         {"total_iterations", run.total_iterations},
         {"starts_completed", run.starts_completed},
         {"converged_starts", run.converged_starts},
         {"distinct_minima", distinct_minima(run)}};
  if (std::holds_alternative<MaximinDistance>(run.model))
    j["min_distance"] = run.min_distance;
  j["best"] = configuration_to_json(run.best);
  j["census"] = std::move(census);
  return j;
}

/// Inverse of run_to_json for the fields needed to re-use a run.
inline MinimizationRun run_from_json(const json &j) {
  MinimizationRun run;
  run.model = model_from_json(j.at("model"));
  run.n = j.at("n").get<std::size_t>();
  run.best = configuration_from_json(j.at("best"));
  run.constraint = run.best.constraint();
  run.settings = settings_from_json(j.value("settings", json::object()));
  run.converged = j.value("converged", false);
  run.best_energy = j.at("best_energy").get<double>();
  run.gradient_norm = j.value("gradient_norm", 0.0);
  run.iterations = j.value("iterations", std::size_t{0});
  run.total_iterations = j.value("total_iterations", std::size_t{0});
  run.starts_completed = j.value("starts_completed", std::size_t{0});
  run.converged_starts = j.value("converged_starts", std::size_t{0});
  run.min_distance = j.value("min_distance", 0.0);
  for (const auto &row : j.value("census", json::array()))
    run.census.push_back({row.at("signature").get<std::string>(), row.at("energy").get<double>(),
                          row.at("count").get<std::size_t>(), row.value("converged", true)});
  if (run.best.size() != run.n)
    throw InvalidArgument("run record: n does not match the stored configuration");
  return run;
}

inline json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

} // namespace polyform
