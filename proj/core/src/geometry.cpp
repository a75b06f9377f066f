// SPDX-License-Identifier: Apache-2.0

#include "phononic/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "phononic/errors.hpp"

namespace phononic {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::pair<Vec2, Vec2> reciprocal_basis(const Vec2& a1, const Vec2& a2) {
  const double det = a1.x() * a2.y() - a1.y() * a2.x();
  if (std::abs(det) <= 1e-14 * a1.norm() * a2.norm()) {
    throw std::invalid_argument("reciprocal_basis: degenerate lattice vectors");
  }
  // Rows of 2*pi * [a1 a2]^{-T}.
  const Vec2 k1 = kTwoPi / det * Vec2(a2.y(), -a2.x());
  const Vec2 k2 = kTwoPi / det * Vec2(-a1.y(), a1.x());
  return {k1, k2};
}

LatticeSpec::LatticeSpec(const Vec2& a1_, const Vec2& a2_) : a1(a1_), a2(a2_) {
  std::tie(k1, k2) = reciprocal_basis(a1, a2);
}

LatticeSpec LatticeSpec::square(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("LatticeSpec::square: a must be positive");
  return LatticeSpec(Vec2(a, 0.0), Vec2(0.0, a));
}

std::vector<PathSample> sample_path(const KPath& path) {
  if (path.vertices.size() < 2) {
    throw std::invalid_argument("sample_path: path needs at least 2 vertices");
  }
  if (path.samples_per_segment < 1) {
    throw std::invalid_argument("sample_path: samples_per_segment must be >= 1");
  }
  std::vector<PathSample> out;
  out.push_back({0.0, path.vertices.front().k});
  double arc = 0.0;
  for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
    const Vec2 p = path.vertices[s].k;
    const Vec2 q = path.vertices[s + 1].k;
    const double len = (q - p).norm();
    const int n = path.samples_per_segment;
    for (int i = 1; i <= n; ++i) {
      const double t = static_cast<double>(i) / n;
      out.push_back({arc + t * len, p + t * (q - p)});
    }
    // Pin the endpoint exactly so shared vertices are reproduced bit-for-bit.
    out.back().k = q;
    arc += len;
    out.back().arc_param = arc;
  }
  return out;
}

std::vector<std::pair<double, std::string>> path_vertex_marks(const KPath& path) {
  std::vector<std::pair<double, std::string>> marks;
  double arc = 0.0;
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    if (i > 0) arc += (path.vertices[i].k - path.vertices[i - 1].k).norm();
    marks.emplace_back(arc, path.vertices[i].label);
  }
  return marks;
}

LevelSet LevelSet::circle(const Vec2& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("LevelSet::circle: radius must be positive");
  LevelSet ls;
  ls.kind_ = Kind::Circle;
  ls.center_ = center;
  ls.radius_ = radius;
  return ls;
}

LevelSet LevelSet::flower(const Vec2& center, double base_radius, double petal_amp,
                          int petal_count) {
  if (!(base_radius > 0.0) || petal_amp < 0.0 || base_radius <= petal_amp) {
    throw std::invalid_argument("LevelSet::flower: need base_radius > petal_amp >= 0");
  }
  if (petal_count < 1) throw std::invalid_argument("LevelSet::flower: petal_count must be >= 1");
  LevelSet ls;
  ls.kind_ = Kind::Flower;
  ls.center_ = center;
  ls.base_radius_ = base_radius;
  ls.petal_amp_ = petal_amp;
  ls.petal_count_ = petal_count;
  return ls;
}

LevelSet LevelSet::generic(std::function<double(const Vec2&)> phi) {
  if (!phi) throw std::invalid_argument("LevelSet::generic: empty callable");
  LevelSet ls;
  ls.kind_ = Kind::Generic;
  ls.fn_ = std::move(phi);
  return ls;
}

double LevelSet::operator()(const Vec2& x) const {
  switch (kind_) {
    case Kind::Circle:
      return (x - center_).norm() - radius_;
    case Kind::Flower: {
      const Vec2 d = x - center_;
      const double theta = std::atan2(d.y(), d.x());
      const double profile = base_radius_ + petal_amp_ * std::sin(petal_count_ * theta);
      return d.norm() - profile;
    }
    case Kind::Generic:
      return fn_(x);
  }
  return 0.0;  // unreachable
}

void check_interface_clearance(const LevelSet& ls, const LatticeSpec& lattice,
                               int samples_per_edge) {
  const Vec2 corners[4] = {Vec2(0.0, 0.0), lattice.a1, lattice.a1 + lattice.a2, lattice.a2};
  double first = 0.0;
  bool have_first = false;
  for (int e = 0; e < 4; ++e) {
    const Vec2 p = corners[e];
    const Vec2 q = corners[(e + 1) % 4];
    for (int i = 0; i <= samples_per_edge; ++i) {
      const double t = static_cast<double>(i) / samples_per_edge;
      const double phi = ls(p + t * (q - p));
      if (phi == 0.0) {
        throw ConfigError("interface: level set vanishes on the cell boundary");
      }
      if (!have_first) {
        first = phi;
        have_first = true;
      } else if (first * phi < 0.0) {
        throw ConfigError("interface: level set changes sign on the cell boundary");
      }
    }
  }
}

}  // namespace phononic
