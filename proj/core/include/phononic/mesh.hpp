// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_MESH_HPP
#define PHONONIC_MESH_HPP

#include <array>
#include <iosfwd>
#include <vector>

#include "phononic/geometry.hpp"

namespace phononic {

// Diagonal direction used to split every subsquare. Main runs bottom-left
// to top-right; Anti is the mirrored split.
enum class Diagonal { Main, Anti };

// Uniform triangulation of the fundamental cell: N^2 subsquares, each split
// into two isosceles right triangles along the same diagonal. Immutable
// after construction.
struct Mesh {
  int n = 0;         // subdivisions per side
  double h = 0.0;    // mesh size, |a1| / n
  std::vector<Vec2> nodes;                  // (n+1)^2, row-major (i fast)
  std::vector<std::array<int, 3>> triangles;  // 2 n^2, counterclockwise
  std::vector<int> periodic_master;         // node -> canonical node id

  int node_id(int i, int j) const { return j * (n + 1) + i; }

  // Canonical nodes are those with i < n and j < n; rank maps them to a
  // dense [0, n^2) index used by the DOF map.
  int canonical_rank(int node) const {
    const int c = periodic_master[node];
    return (c / (n + 1)) * n + (c % (n + 1));
  }
  int canonical_count() const { return n * n; }
};

// Builds the uniform periodic mesh. Only square lattices (a1 perpendicular
// to a2, equal lengths) are accepted.
Mesh build_uniform(const LatticeSpec& lattice, int n, Diagonal diagonal = Diagonal::Main);

enum class ElemTag { InteriorPlus, InteriorMinus, Cut };

// Per-triangle classification against the level set. Vertex values with
// |phi| < 1e-14*h are nudged to +1e-14*h so the interface never sits on a
// node. Sign-change triangles whose minority-side area fraction is below
// eps_cut are reclassified to the majority side.
std::vector<ElemTag> classify(const Mesh& mesh, const LevelSet& ls, double eps_cut = 1e-8);

// Plain-text dump: node lines "index x y", then triangle lines
// "index v0 v1 v2 tag".
void dump_mesh(std::ostream& os, const Mesh& mesh, const std::vector<ElemTag>& tags);

// Nudged level-set values at the three vertices of a triangle (shared by
// classification and cut construction). Throws NumericalError if all three
// raw values are below 1e-14 in magnitude.
std::array<double, 3> nudged_vertex_values(const LevelSet& ls, const std::array<Vec2, 3>& tri,
                                           double h);

}  // namespace phononic

#endif  // PHONONIC_MESH_HPP
