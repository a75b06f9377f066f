// SPDX-License-Identifier: Apache-2.0

#include "phononic/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "phononic/errors.hpp"

namespace phononic {

using nlohmann::json;

Material material_preset(const std::string& name) {
  if (name == "aurum") return Material{4.23e10, 2.99e10, 19500.0};
  if (name == "aluminium") return Material{4.59e10, 2.70e10, 2730.0};
  if (name == "epoxy") return Material{4.23e9, 1.57e9, 1180.0};
  throw ConfigError("materials: unknown preset \"" + name +
                    "\" (expected aurum, aluminium, or epoxy)");
}

KPath default_square_path(double a, int samples_per_segment) {
  const double p = std::numbers::pi / a;
  KPath path;
  path.vertices = {{"O", Vec2(0.0, 0.0)},
                   {"X", Vec2(p, 0.0)},
                   {"M", Vec2(p, p)},
                   {"O", Vec2(0.0, 0.0)}};
  path.samples_per_segment = samples_per_segment;
  return path;
}

std::optional<LevelSet> make_level_set(const InterfaceSpec& spec) {
  switch (spec.kind) {
    case InterfaceSpec::Kind::None:
      return std::nullopt;
    case InterfaceSpec::Kind::Circle:
      return LevelSet::circle(spec.center, spec.radius);
    case InterfaceSpec::Kind::Flower:
      return LevelSet::flower(spec.center, spec.base_radius, spec.petal_amp, spec.petal_count);
  }
  return std::nullopt;
}

namespace {

double require_number(const json& obj, const std::string& section, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ConfigError(section + "." + key + ": missing or not a number");
  }
  return obj[key].get<double>();
}

double number_or(const json& obj, const std::string& section, const std::string& key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) throw ConfigError(section + "." + key + ": not a number");
  return obj[key].get<double>();
}

Vec2 require_vec2(const json& obj, const std::string& section, const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != 2 ||
      !obj[key][0].is_number() || !obj[key][1].is_number()) {
    throw ConfigError(section + "." + key + ": expected an array of two numbers");
  }
  return Vec2(obj[key][0].get<double>(), obj[key][1].get<double>());
}

Material parse_material(const json& root, const std::string& which) {
  if (!root.contains("materials") || !root["materials"].is_object()) {
    throw ConfigError("materials: missing section");
  }
  const json& mats = root["materials"];
  if (!mats.contains(which) || !mats[which].is_object()) {
    throw ConfigError("materials." + which + ": missing block");
  }
  const json& m = mats[which];
  const std::string section = "materials." + which;
  if (m.contains("preset")) {
    if (!m["preset"].is_string()) throw ConfigError(section + ".preset: not a string");
    return material_preset(m["preset"].get<std::string>());
  }
  Material out;
  out.lambda = require_number(m, section, "lambda");
  out.mu = require_number(m, section, "mu");
  out.rho = require_number(m, section, "rho");
  if (!(out.mu > 0.0) || out.lambda < 0.0 || !(out.rho > 0.0)) {
    throw ConfigError(section + ": need mu > 0, lambda >= 0, rho > 0");
  }
  return out;
}

InterfaceSpec parse_interface(const json& root) {
  if (!root.contains("interface") || !root["interface"].is_object()) {
    throw ConfigError("interface: missing section");
  }
  const json& itf = root["interface"];
  if (!itf.contains("kind") || !itf["kind"].is_string()) {
    throw ConfigError("interface.kind: missing or not a string");
  }
  const std::string kind = itf["kind"].get<std::string>();
  InterfaceSpec spec;
  if (kind == "none") {
    spec.kind = InterfaceSpec::Kind::None;
    return spec;
  }
  if (itf.contains("center")) spec.center = require_vec2(itf, "interface", "center");
  if (kind == "circle") {
    spec.kind = InterfaceSpec::Kind::Circle;
    spec.radius = require_number(itf, "interface", "radius");
    if (!(spec.radius > 0.0)) throw ConfigError("interface.radius: must be positive");
    return spec;
  }
  if (kind == "flower") {
    spec.kind = InterfaceSpec::Kind::Flower;
    spec.base_radius = number_or(itf, "interface", "base_radius", spec.base_radius);
    spec.petal_amp = number_or(itf, "interface", "petal_amp", spec.petal_amp);
    const double count = number_or(itf, "interface", "petal_count", spec.petal_count);
    spec.petal_count = static_cast<int>(count);
    if (!(spec.base_radius > spec.petal_amp) || spec.petal_amp < 0.0 || spec.petal_count < 1) {
      throw ConfigError("interface: flower needs base_radius > petal_amp >= 0, petal_count >= 1");
    }
    return spec;
  }
  throw ConfigError("interface.kind: unknown kind \"" + kind +
                    "\" (expected none, circle, or flower)");
}

KPath parse_path(const json& root, double a) {
  if (!root.contains("path")) return default_square_path(a);
  const json& p = root["path"];
  KPath path;
  path.samples_per_segment = static_cast<int>(number_or(p, "path", "samples_per_segment", 30));
  if (path.samples_per_segment < 1) {
    throw ConfigError("path.samples_per_segment: must be >= 1");
  }
  if (!p.contains("vertices")) return default_square_path(a, path.samples_per_segment);
  if (!p["vertices"].is_array() || p["vertices"].size() < 2) {
    throw ConfigError("path.vertices: expected an array of at least 2 vertices");
  }
  for (const json& v : p["vertices"]) {
    PathVertex vertex;
    if (v.contains("label")) {
      if (!v["label"].is_string()) throw ConfigError("path.vertices.label: not a string");
      vertex.label = v["label"].get<std::string>();
    }
    vertex.k = require_vec2(v, "path.vertices", "k");
    path.vertices.push_back(vertex);
  }
  return path;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config: JSON parse error: ") + err.what());
  }

  RunConfig cfg;
  if (root.contains("lattice")) {
    cfg.a = number_or(root["lattice"], "lattice", "a", 1.0);
    if (!(cfg.a > 0.0)) throw ConfigError("lattice.a: must be positive");
  }
  cfg.matrix_material = parse_material(root, "matrix");
  cfg.inclusion_material = parse_material(root, "inclusion");
  cfg.interface = parse_interface(root);

  if (root.contains("discretization")) {
    const json& d = root["discretization"];
    cfg.n = static_cast<int>(number_or(d, "discretization", "n", cfg.n));
    if (cfg.n < 2) throw ConfigError("discretization.n: must be >= 2");
    cfg.eps_cut = number_or(d, "discretization", "eps_cut", cfg.eps_cut);
    if (cfg.eps_cut < 0.0 || cfg.eps_cut >= 0.5) {
      throw ConfigError("discretization.eps_cut: must be in [0, 0.5)");
    }
    cfg.gamma_hat = number_or(d, "discretization", "gamma_hat", cfg.gamma_hat);
    if (!(cfg.gamma_hat > 0.0)) throw ConfigError("discretization.gamma_hat: must be positive");
    if (d.contains("diagonal")) {
      if (!d["diagonal"].is_string()) throw ConfigError("discretization.diagonal: not a string");
      const std::string diag = d["diagonal"].get<std::string>();
      if (diag == "main") {
        cfg.diagonal = Diagonal::Main;
      } else if (diag == "anti") {
        cfg.diagonal = Diagonal::Anti;
      } else {
        throw ConfigError("discretization.diagonal: expected \"main\" or \"anti\"");
      }
    }
  }

  cfg.path = parse_path(root, cfg.a);

  if (root.contains("solver")) {
    const json& s = root["solver"];
    cfg.num_bands = static_cast<int>(number_or(s, "solver", "num_bands", cfg.num_bands));
    if (cfg.num_bands < 1) throw ConfigError("solver.num_bands: must be >= 1");
    cfg.tol = number_or(s, "solver", "tol", cfg.tol);
    if (!(cfg.tol > 0.0)) throw ConfigError("solver.tol: must be positive");
    cfg.dense_threshold =
        static_cast<int>(number_or(s, "solver", "dense_threshold", cfg.dense_threshold));
  }

  if (root.contains("output")) {
    const json& o = root["output"];
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) throw ConfigError("output.dir: not a string");
      cfg.out_dir = o["dir"].get<std::string>();
    }
    if (o.contains("svg")) {
      if (!o["svg"].is_boolean()) throw ConfigError("output.svg: not a boolean");
      cfg.svg = o["svg"].get<bool>();
    }
  }

  if (root.contains("convergence")) {
    const json& c = root["convergence"];
    cfg.convergence_k = require_vec2(c, "convergence", "k");
    if (!c.contains("levels") || !c["levels"].is_array()) {
      throw ConfigError("convergence.levels: missing or not an array");
    }
    for (const json& l : c["levels"]) {
      if (!l.is_number()) throw ConfigError("convergence.levels: entries must be numbers");
      cfg.convergence_levels.push_back(l.get<int>());
    }
    cfg.convergence_eigs =
        static_cast<int>(number_or(c, "convergence", "num_eigs", cfg.convergence_eigs));
    if (cfg.convergence_eigs < 1) throw ConfigError("convergence.num_eigs: must be >= 1");
  }

  return cfg;
}

}  // namespace phononic
