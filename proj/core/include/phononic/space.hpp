// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_SPACE_HPP
#define PHONONIC_SPACE_HPP

#include <array>
#include <vector>

#include "phononic/mesh.hpp"

namespace phononic {

enum class Side { Plus = 0, Minus = 1 };

inline int side_index(Side s) { return static_cast<int>(s); }
inline double jump_sign(Side s) { return s == Side::Plus ? 1.0 : -1.0; }

// Degree-of-freedom numbering of the doubled periodic P1 vector space
// V_h = V_h^+ (+) V_h^-. A canonical node carries side-s DOFs iff it touches
// an element of the side-s fictitious triangulation; nodes in the overlap
// carry two independent DOF pairs. Numbering is side-major, then node index,
// then component.
struct DofMap {
  int n_dofs = 0;
  // [side][canonical rank] -> index of the x-component DOF, or -1.
  std::array<std::vector<int>, 2> node_base;
  std::vector<Side> side_support;  // per global DOF

  int dof(Side s, int canonical_rank, int component) const {
    return node_base[side_index(s)][canonical_rank] + component;
  }
  bool has_side(Side s, int canonical_rank) const {
    return node_base[side_index(s)][canonical_rank] >= 0;
  }
};

DofMap build_dofmap(const Mesh& mesh, const std::vector<ElemTag>& tags);

// Side-s triangulation membership implied by a tag.
inline bool on_side(ElemTag tag, Side s) {
  if (tag == ElemTag::Cut) return true;
  return (tag == ElemTag::InteriorPlus) == (s == Side::Plus);
}

// The six scalar DOFs (v0x v0y v1x v1y v2x v2y) of one element side.
std::array<int, 6> element_dofs(const DofMap& dofmap, const Mesh& mesh, int element, Side s);

// P1 barycentric values and (constant) gradients on a triangle.
struct ShapeEval {
  std::array<double, 3> value{};
  std::array<Vec2, 3> grad{};
};

ShapeEval shape_eval(const std::array<Vec2, 3>& tri, const Vec2& x);

}  // namespace phononic

#endif  // PHONONIC_SPACE_HPP
