// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_GEOMETRY_HPP
#define PHONONIC_GEOMETRY_HPP

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace phononic {

using Vec2 = Eigen::Vector2d;

// Reciprocal basis of a 2D Bravais lattice: k_i . a_j = 2*pi*delta_ij.
// Throws std::invalid_argument if a1, a2 are (numerically) dependent.
std::pair<Vec2, Vec2> reciprocal_basis(const Vec2& a1, const Vec2& a2);

// Primitive vectors of the lattice together with the derived reciprocal
// basis. Immutable after construction.
struct LatticeSpec {
  Vec2 a1, a2;
  Vec2 k1, k2;

  LatticeSpec(const Vec2& a1_, const Vec2& a2_);

  static LatticeSpec square(double a);

  // Side length for square lattices; |a1| in general.
  double cell_size() const { return a1.norm(); }
};

// Bloch quasi-momentum.
struct KPoint {
  Vec2 k;
};

struct PathVertex {
  std::string label;
  Vec2 k;
};

// Polyline through the Brillouin zone, e.g. O-X-M-O.
struct KPath {
  std::vector<PathVertex> vertices;
  int samples_per_segment = 30;
};

struct PathSample {
  double arc_param = 0.0;  // cumulative arclength in k-space
  Vec2 k;
};

// Uniform samples along the path. Each segment contributes
// samples_per_segment points beyond its start, so the total count is
// 1 + segments * samples_per_segment and every vertex is hit exactly.
std::vector<PathSample> sample_path(const KPath& path);

// Arclength position and label of each path vertex (for plot annotations).
std::vector<std::pair<double, std::string>> path_vertex_marks(const KPath& path);

// Implicit description of the material interface Gamma = {phi = 0}.
// Sign convention: phi < 0 inside the inclusion (Omega^-), phi > 0 in the
// matrix (Omega^+).
class LevelSet {
public:
  enum class Kind { Circle, Flower, Generic };

  static LevelSet circle(const Vec2& center, double radius);
  // Polar profile r(theta) = base_radius + petal_amp * sin(petal_count*theta).
  // Defaults are the five-petal flower with base 1/2 and amplitude 1/7.
  static LevelSet flower(const Vec2& center, double base_radius = 0.5,
                         double petal_amp = 1.0 / 7.0, int petal_count = 5);
  static LevelSet generic(std::function<double(const Vec2&)> phi);

  double operator()(const Vec2& x) const;

  Kind kind() const { return kind_; }

private:
  LevelSet() = default;

  Kind kind_ = Kind::Generic;
  Vec2 center_{0.0, 0.0};
  double radius_ = 0.0;
  double base_radius_ = 0.0;
  double petal_amp_ = 0.0;
  int petal_count_ = 0;
  std::function<double(const Vec2&)> fn_;
};

// Verifies that Gamma stays away from the cell boundary by sampling each
// edge of the fundamental cell. Throws ConfigError on a sign change or a
// (numerically) vanishing value.
void check_interface_clearance(const LevelSet& ls, const LatticeSpec& lattice,
                               int samples_per_edge = 4096);

}  // namespace phononic

#endif  // PHONONIC_GEOMETRY_HPP
