// SPDX-License-Identifier: Apache-2.0

#include "phononic/mesh.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "phononic/cutquad.hpp"
#include "phononic/errors.hpp"

namespace phononic {

Mesh build_uniform(const LatticeSpec& lattice, int n, Diagonal diagonal) {
  if (n < 2) throw std::invalid_argument("build_uniform: n must be >= 2");
  const Vec2 a1 = lattice.a1;
  const Vec2 a2 = lattice.a2;
  const double la1 = a1.norm();
  const double la2 = a2.norm();
  if (std::abs(a1.dot(a2)) > 1e-12 * la1 * la2 || std::abs(la1 - la2) > 1e-12 * la1) {
    throw std::invalid_argument("build_uniform: only square lattices are supported");
  }

  Mesh mesh;
  mesh.n = n;
  mesh.h = la1 / n;
  mesh.nodes.reserve((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.nodes.push_back((static_cast<double>(i) / n) * a1 + (static_cast<double>(j) / n) * a2);
    }
  }

  // Right-handed bases keep the splits below counterclockwise; flip the
  // vertex order otherwise.
  const bool ccw = (a1.x() * a2.y() - a1.y() * a2.x()) > 0.0;
  auto push = [&](int p, int q, int r) {
    if (ccw) {
      mesh.triangles.push_back({p, q, r});
    } else {
      mesh.triangles.push_back({p, r, q});
    }
  };

  mesh.triangles.reserve(2 * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = mesh.node_id(i, j);
      const int b = mesh.node_id(i + 1, j);
      const int c = mesh.node_id(i + 1, j + 1);
      const int d = mesh.node_id(i, j + 1);
      if (diagonal == Diagonal::Main) {
        push(a, b, c);
        push(a, c, d);
      } else {
        push(a, b, d);
        push(b, c, d);
      }
    }
  }

  mesh.periodic_master.resize((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      mesh.periodic_master[mesh.node_id(i, j)] = mesh.node_id(i % n, j % n);
    }
  }
  return mesh;
}

std::array<double, 3> nudged_vertex_values(const LevelSet& ls, const std::array<Vec2, 3>& tri,
                                           double h) {
  std::array<double, 3> phi{};
  int tiny = 0;
  for (int v = 0; v < 3; ++v) {
    phi[v] = ls(tri[v]);
    if (std::abs(phi[v]) < 1e-14) ++tiny;
  }
  if (tiny == 3) {
    throw NumericalError("classify: level set degenerates on a whole element");
  }
  for (int v = 0; v < 3; ++v) {
    if (std::abs(phi[v]) < 1e-14 * h) phi[v] = 1e-14 * h;
  }
  return phi;
}

std::vector<ElemTag> classify(const Mesh& mesh, const LevelSet& ls, double eps_cut) {
  std::vector<ElemTag> tags(mesh.triangles.size());
  for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
    const auto& t = mesh.triangles[e];
    const std::array<Vec2, 3> tri = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
    const auto phi = nudged_vertex_values(ls, tri, mesh.h);
    const int pos = (phi[0] > 0.0) + (phi[1] > 0.0) + (phi[2] > 0.0);
    if (pos == 3) {
      tags[e] = ElemTag::InteriorPlus;
    } else if (pos == 0) {
      tags[e] = ElemTag::InteriorMinus;
    } else {
      const CutGeometry cut = split_triangle(tri, ls);
      const double total = cut.area_plus + cut.area_minus;
      if (cut.area_minus < eps_cut * total) {
        tags[e] = ElemTag::InteriorPlus;
      } else if (cut.area_plus < eps_cut * total) {
        tags[e] = ElemTag::InteriorMinus;
      } else {
        tags[e] = ElemTag::Cut;
      }
    }
  }
  return tags;
}

namespace {
const char* tag_name(ElemTag tag) {
  switch (tag) {
    case ElemTag::InteriorPlus: return "InteriorPlus";
    case ElemTag::InteriorMinus: return "InteriorMinus";
    case ElemTag::Cut: return "Cut";
  }
  return "?";
}
}  // namespace

void dump_mesh(std::ostream& os, const Mesh& mesh, const std::vector<ElemTag>& tags) {
  os << "# nodes " << mesh.nodes.size() << "\n";
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    os << i << " " << mesh.nodes[i].x() << " " << mesh.nodes[i].y() << "\n";
  }
  os << "# triangles " << mesh.triangles.size() << "\n";
  for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
    const auto& t = mesh.triangles[e];
    os << e << " " << t[0] << " " << t[1] << " " << t[2] << " " << tag_name(tags[e]) << "\n";
  }
}

}  // namespace phononic
