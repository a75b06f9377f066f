// SPDX-License-Identifier: Apache-2.0

#include "phononic/cutquad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "phononic/errors.hpp"

namespace phononic {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

// Appends the 3-point midpoint rule for triangle (a,b,c).
void append_midpoint_rule(std::vector<QuadPoint>& quad, const Vec2& a, const Vec2& b,
                          const Vec2& c) {
  const double w = std::abs(signed_area(a, b, c)) / 3.0;
  quad.push_back({0.5 * (a + b), w});
  quad.push_back({0.5 * (b + c), w});
  quad.push_back({0.5 * (c + a), w});
}

// Root of phi along segment [p, q] with phi(p), phi(q) of opposite sign.
Vec2 bisect_crossing(const LevelSet& ls, Vec2 p, double fp, Vec2 q, double tol) {
  for (int it = 0; it < 200; ++it) {
    const Vec2 mid = 0.5 * (p + q);
    if ((q - p).norm() <= tol) return mid;
    const double fm = ls(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fp > 0.0)) {
      p = mid;
      fp = fm;
    } else {
      q = mid;
    }
  }
  throw NumericalError("split_triangle: edge-crossing bisection did not converge");
}

}  // namespace

std::vector<QuadPoint> bulk_quadrature(const std::array<Vec2, 3>& tri) {
  const double area = signed_area(tri[0], tri[1], tri[2]);
  const double scale = (tri[1] - tri[0]).norm() * (tri[2] - tri[0]).norm();
  if (std::abs(area) <= 1e-14 * scale) {
    throw std::invalid_argument("bulk_quadrature: degenerate triangle");
  }
  std::vector<QuadPoint> quad;
  quad.reserve(3);
  append_midpoint_rule(quad, tri[0], tri[1], tri[2]);
  return quad;
}

CutGeometry split_triangle(const std::array<Vec2, 3>& tri, const LevelSet& ls) {
  double min_edge = std::numeric_limits<double>::max();
  for (int v = 0; v < 3; ++v) {
    min_edge = std::min(min_edge, (tri[(v + 1) % 3] - tri[v]).norm());
  }
  const auto phi = nudged_vertex_values(ls, tri, min_edge);

  const int pos = (phi[0] > 0.0) + (phi[1] > 0.0) + (phi[2] > 0.0);
  if (pos == 0 || pos == 3) {
    throw std::invalid_argument("split_triangle: triangle is not crossed by the interface");
  }
  // Lone vertex: the one whose sign differs from the other two.
  const bool lone_positive = (pos == 1);
  int lone = -1;
  for (int v = 0; v < 3; ++v) {
    if ((phi[v] > 0.0) == lone_positive) lone = v;
  }
  const int n1 = (lone + 1) % 3;
  const int n2 = (lone + 2) % 3;

  const double tol = 1e-13 * min_edge;
  const Vec2 p0 = bisect_crossing(ls, tri[lone], phi[lone], tri[n1], tol);
  const Vec2 p1 = bisect_crossing(ls, tri[lone], phi[lone], tri[n2], tol);

  CutGeometry cut;
  cut.p0 = p0;
  cut.p1 = p1;
  cut.iface_len = (p1 - p0).norm();

  // Minority side: subtriangle at the lone vertex. Majority side: the
  // remaining quadrilateral, split into two subtriangles.
  std::vector<QuadPoint> lone_quad;
  append_midpoint_rule(lone_quad, tri[lone], p0, p1);
  const double lone_area = std::abs(signed_area(tri[lone], p0, p1));

  std::vector<QuadPoint> rest_quad;
  append_midpoint_rule(rest_quad, tri[n1], tri[n2], p1);
  append_midpoint_rule(rest_quad, tri[n1], p1, p0);
  const double rest_area =
      std::abs(signed_area(tri[n1], tri[n2], p1)) + std::abs(signed_area(tri[n1], p1, p0));

  if (lone_positive) {
    cut.vol_quad_plus = std::move(lone_quad);
    cut.area_plus = lone_area;
    cut.vol_quad_minus = std::move(rest_quad);
    cut.area_minus = rest_area;
  } else {
    cut.vol_quad_minus = std::move(lone_quad);
    cut.area_minus = lone_area;
    cut.vol_quad_plus = std::move(rest_quad);
    cut.area_plus = rest_area;
  }

  // 2-point Gauss rule on the chord.
  const Vec2 mid = 0.5 * (p0 + p1);
  const Vec2 half = 0.5 * (p1 - p0);
  const double g = 1.0 / std::sqrt(3.0);
  cut.line_quad.push_back({mid - g * half, 0.5 * cut.iface_len});
  cut.line_quad.push_back({mid + g * half, 0.5 * cut.iface_len});

  // Normal oriented from Omega^- to Omega^+: phi must increase along +n.
  Vec2 n(p1.y() - p0.y(), p0.x() - p1.x());
  const double nn = n.norm();
  if (nn <= 1e-300) {
    throw NumericalError("split_triangle: vanishing interface segment");
  }
  n /= nn;
  const double delta = 1e-6 * min_edge;
  if (ls(mid + delta * n) < ls(mid - delta * n)) n = -n;
  cut.normal = n;
  return cut;
}

std::vector<std::optional<CutGeometry>> build_cuts(const Mesh& mesh, const LevelSet& ls,
                                                   const std::vector<ElemTag>& tags) {
  std::vector<std::optional<CutGeometry>> cuts(mesh.triangles.size());
  for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
    if (tags[e] != ElemTag::Cut) continue;
    const auto& t = mesh.triangles[e];
    CutGeometry cut = split_triangle({mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]}, ls);
    cut.element = static_cast<int>(e);
    cuts[e] = std::move(cut);
  }
  return cuts;
}

}  // namespace phononic
