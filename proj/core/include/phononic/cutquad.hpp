// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_CUTQUAD_HPP
#define PHONONIC_CUTQUAD_HPP

#include <array>
#include <optional>
#include <vector>

#include "phononic/geometry.hpp"
#include "phononic/mesh.hpp"

namespace phononic {

struct QuadPoint {
  Vec2 x;
  double w = 0.0;
};

// Split of a cut triangle: linearized interface segment p0-p1, unit normal
// pointing from Omega^- to Omega^+, sub-cell volume rules (degree 2) and a
// 2-point Gauss rule on the segment.
struct CutGeometry {
  int element = -1;
  Vec2 p0, p1;
  Vec2 normal;
  double area_plus = 0.0;
  double area_minus = 0.0;
  double iface_len = 0.0;
  std::vector<QuadPoint> vol_quad_plus;
  std::vector<QuadPoint> vol_quad_minus;
  std::vector<QuadPoint> line_quad;
};

// 3-point edge-midpoint rule, exact for polynomials of total degree <= 2.
// Weights sum to the triangle area.
std::vector<QuadPoint> bulk_quadrature(const std::array<Vec2, 3>& tri);

// Splits a triangle crossed once by the interface (one vertex on one side,
// two on the other after the classification nudge). Edge crossings are
// located by bisection; the interface is linearized as the chord p0-p1.
CutGeometry split_triangle(const std::array<Vec2, 3>& tri, const LevelSet& ls);

// Cut geometry for every Cut-tagged element; other entries stay empty.
std::vector<std::optional<CutGeometry>> build_cuts(const Mesh& mesh, const LevelSet& ls,
                                                   const std::vector<ElemTag>& tags);

}  // namespace phononic

#endif  // PHONONIC_CUTQUAD_HPP
