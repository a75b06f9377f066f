// SPDX-License-Identifier: Apache-2.0

#include "phononic/space.hpp"

#include <cmath>
#include <stdexcept>

namespace phononic {

DofMap build_dofmap(const Mesh& mesh, const std::vector<ElemTag>& tags) {
  DofMap dm;
  const int nc = mesh.canonical_count();
  std::array<std::vector<char>, 2> touched = {std::vector<char>(nc, 0),
                                              std::vector<char>(nc, 0)};
  for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
    for (Side s : {Side::Plus, Side::Minus}) {
      if (!on_side(tags[e], s)) continue;
      for (int v : mesh.triangles[e]) {
        touched[side_index(s)][mesh.canonical_rank(v)] = 1;
      }
    }
  }

  int next = 0;
  for (Side s : {Side::Plus, Side::Minus}) {
    auto& base = dm.node_base[side_index(s)];
    base.assign(nc, -1);
    for (int c = 0; c < nc; ++c) {
      if (!touched[side_index(s)][c]) continue;
      base[c] = next;
      dm.side_support.push_back(s);
      dm.side_support.push_back(s);
      next += 2;
    }
  }
  dm.n_dofs = next;
  return dm;
}

std::array<int, 6> element_dofs(const DofMap& dofmap, const Mesh& mesh, int element, Side s) {
  const auto& t = mesh.triangles[element];
  std::array<int, 6> dofs{};
  for (int v = 0; v < 3; ++v) {
    const int rank = mesh.canonical_rank(t[v]);
    dofs[2 * v] = dofmap.dof(s, rank, 0);
    dofs[2 * v + 1] = dofmap.dof(s, rank, 1);
  }
  return dofs;
}

ShapeEval shape_eval(const std::array<Vec2, 3>& tri, const Vec2& x) {
  const Vec2 e1 = tri[1] - tri[0];
  const Vec2 e2 = tri[2] - tri[0];
  const double det = e1.x() * e2.y() - e1.y() * e2.x();
  if (std::abs(det) <= 1e-14 * e1.norm() * e2.norm()) {
    throw std::invalid_argument("shape_eval: degenerate triangle");
  }
  ShapeEval se;
  // Gradients of the barycentric coordinates; lambda_0 = 1 - lambda_1 - lambda_2.
  se.grad[1] = Vec2(e2.y(), -e2.x()) / det;
  se.grad[2] = Vec2(-e1.y(), e1.x()) / det;
  se.grad[0] = -se.grad[1] - se.grad[2];

  const Vec2 d = x - tri[0];
  se.value[1] = se.grad[1].dot(d);
  se.value[2] = se.grad[2].dot(d);
  se.value[0] = 1.0 - se.value[1] - se.value[2];
  return se;
}

}  // namespace phononic
