// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_CONFIG_HPP
#define PHONONIC_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "phononic/assembly.hpp"
#include "phononic/geometry.hpp"
#include "phononic/mesh.hpp"

namespace phononic {

// Built-in material presets: aurum, aluminium, epoxy.
Material material_preset(const std::string& name);

struct InterfaceSpec {
  enum class Kind { None, Circle, Flower };
  Kind kind = Kind::Circle;
  Vec2 center{0.5, 0.5};
  double radius = 0.25;          // circle
  double base_radius = 0.5;      // flower
  double petal_amp = 1.0 / 7.0;  // flower
  int petal_count = 5;           // flower
};

struct RunConfig {
  double a = 1.0;                 // lattice constant
  Material matrix_material;       // Omega^+
  Material inclusion_material;    // Omega^-
  InterfaceSpec interface;
  int n = 64;                     // mesh subdivisions
  double eps_cut = 1e-8;
  double gamma_hat = 100.0;
  Diagonal diagonal = Diagonal::Main;
  KPath path;                     // defaults to O-X-M-O
  int num_bands = 10;
  double tol = 1e-9;
  int dense_threshold = 1200;
  std::string out_dir = ".";
  bool svg = false;
  // converge command inputs
  std::optional<Vec2> convergence_k;
  std::vector<int> convergence_levels;
  int convergence_eigs = 6;

  LatticeSpec lattice() const { return LatticeSpec::square(a); }
  MaterialParams materials() const { return MaterialParams(matrix_material, inclusion_material); }
  // Inclusion-side transverse speed, the band-diagram normalization scale.
  double normalization_speed() const { return inclusion_material.transverse_speed(); }
};

// O-X-M-O walk of the irreducible Brillouin zone wedge of the square lattice.
KPath default_square_path(double a, int samples_per_segment = 30);

// Level set described by the interface section, or nullopt for Kind::None.
std::optional<LevelSet> make_level_set(const InterfaceSpec& spec);

// Parses the JSON configuration file. Throws ConfigError naming the
// offending field on missing or invalid entries.
RunConfig load_run_config(const std::string& path);

}  // namespace phononic

#endif  // PHONONIC_CONFIG_HPP
