// SPDX-License-Identifier: Apache-2.0

#include "phononic/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "phononic/errors.hpp"

namespace phononic {

namespace {

using Mat2c = Eigen::Matrix2cd;
using Vec2c = Eigen::Vector2cd;
using Local6 = Eigen::Matrix<Complex, 6, 6>;
using Local12 = Eigen::Matrix<Complex, 12, 12>;
constexpr Complex kI(0.0, 1.0);

// Shifted strain of the P1 shape function (vertex i, component c) at a point
// where the barycentric value is lam: sym(e_c grad^T) + i lam sym(k e_c^T).
Mat2c shape_strain(const Vec2& grad, double lam, const Vec2& k, int c) {
  Mat2c out = Mat2c::Zero();
  out(c, 0) += 0.5 * grad.x();
  out(c, 1) += 0.5 * grad.y();
  out(0, c) += 0.5 * grad.x();
  out(1, c) += 0.5 * grad.y();
  out(c, 0) += kI * (0.5 * lam * k.x());
  out(c, 1) += kI * (0.5 * lam * k.y());
  out(0, c) += kI * (0.5 * lam * k.x());
  out(1, c) += kI * (0.5 * lam * k.y());
  return out;
}

// Frobenius product a : conj(b).
Complex frobenius(const Mat2c& a, const Mat2c& b) {
  return a(0, 0) * std::conj(b(0, 0)) + a(0, 1) * std::conj(b(0, 1)) +
         a(1, 0) * std::conj(b(1, 0)) + a(1, 1) * std::conj(b(1, 1));
}

enum class FormRoute { Tensor, Expanded };

// Volume integrand for trial/test strains: Tensor evaluates C E : conj(F),
// Expanded evaluates 2 mu E : conj(F) + lambda tr(E) conj(tr(F)).
Complex volume_integrand(FormRoute route, const Material& mat, const Mat2c& trial,
                         const Mat2c& test) {
  if (route == FormRoute::Tensor) {
    return frobenius(stiffness_apply(mat.mu, mat.lambda, trial), test);
  }
  const Complex div_u = trial(0, 0) + trial(1, 1);
  const Complex div_v = test(0, 0) + test(1, 1);
  return 2.0 * mat.mu * frobenius(trial, test) + mat.lambda * div_u * std::conj(div_v);
}

// Interface flux C(E) n of one shape strain.
Vec2c flux_vector(FormRoute route, const Material& mat, const Mat2c& strain, const Vec2& n) {
  if (route == FormRoute::Tensor) {
    return stiffness_apply(mat.mu, mat.lambda, strain) * Vec2c(n.x(), n.y());
  }
  const Complex div = strain(0, 0) + strain(1, 1);
  Vec2c out = 2.0 * mat.mu * (strain * Vec2c(n.x(), n.y()));
  out += mat.lambda * div * Vec2c(n.x(), n.y());
  return out;
}

// Strains of all six side-local shapes at one quadrature point.
std::array<Mat2c, 6> side_shape_strains(const ShapeEval& se, const Vec2& k) {
  std::array<Mat2c, 6> strains;
  for (int v = 0; v < 3; ++v) {
    for (int c = 0; c < 2; ++c) {
      strains[2 * v + c] = shape_strain(se.grad[v], se.value[v], k, c);
    }
  }
  return strains;
}

struct Accumulator {
  std::vector<Eigen::Triplet<Complex>> a;
  std::vector<Eigen::Triplet<Complex>> b;

  void scatter_a(const std::array<int, 6>& rows, const std::array<int, 6>& cols,
                 const Local6& local) {
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        if (local(i, j) != 0.0) a.emplace_back(rows[i], cols[j], local(i, j));
      }
    }
  }
  void scatter_b(const std::array<int, 6>& dofs, const Local6& local) {
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        if (local(i, j) != 0.0) b.emplace_back(dofs[i], dofs[j], local(i, j));
      }
    }
  }
};

// Volume + mass contribution of one element side over the given quadrature.
void accumulate_volume(Accumulator& acc, FormRoute route, const std::array<Vec2, 3>& tri,
                       const std::vector<QuadPoint>& quad, const Material& mat, const Vec2& k,
                       const std::array<int, 6>& dofs) {
  Local6 a = Local6::Zero();
  Local6 b = Local6::Zero();
  for (const QuadPoint& qp : quad) {
    const ShapeEval se = shape_eval(tri, qp.x);
    const auto strains = side_shape_strains(se, k);
    for (int t = 0; t < 6; ++t) {
      for (int u = 0; u < 6; ++u) {
        a(t, u) += qp.w * volume_integrand(route, mat, strains[u], strains[t]);
      }
    }
    for (int vt = 0; vt < 3; ++vt) {
      for (int vu = 0; vu < 3; ++vu) {
        const double m = qp.w * mat.rho * se.value[vt] * se.value[vu];
        b(2 * vt, 2 * vu) += m;
        b(2 * vt + 1, 2 * vu + 1) += m;
      }
    }
  }
  acc.scatter_a(dofs, dofs, a);
  acc.scatter_b(dofs, b);
}

// Interface terms of one cut element: consistency, its Hermitian adjoint,
// and the jump penalty, all on the chord quadrature.
void accumulate_interface(Accumulator& acc, FormRoute route, const std::array<Vec2, 3>& tri,
                          const CutGeometry& cut, const MaterialParams& mats,
                          const NitscheParams& nit, const Vec2& k, double h,
                          const std::array<int, 6>& dofs_plus,
                          const std::array<int, 6>& dofs_minus) {
  // Local layout: slots 0..5 = plus side, 6..11 = minus side.
  Local12 consistency = Local12::Zero();
  Local12 penalty = Local12::Zero();
  for (const QuadPoint& qp : cut.line_quad) {
    const ShapeEval se = shape_eval(tri, qp.x);
    const auto strains = side_shape_strains(se, k);

    std::array<Vec2c, 12> flux;    // kappa-weighted flux of each slot
    std::array<double, 12> jump;   // jump trace factor of each slot
    std::array<int, 12> comp;      // displacement component of each slot
    for (int sidx = 0; sidx < 2; ++sidx) {
      const Side s = sidx == 0 ? Side::Plus : Side::Minus;
      for (int l = 0; l < 6; ++l) {
        const int slot = 6 * sidx + l;
        flux[slot] = nit.kappa(s) * flux_vector(route, mats.side(s), strains[l], cut.normal);
        jump[slot] = jump_sign(s) * se.value[l / 2];
        comp[slot] = l % 2;
      }
    }
    for (int t = 0; t < 12; ++t) {
      for (int u = 0; u < 12; ++u) {
        // <<C(grad_k . u) n>> . conj([[v]]); the jump trace is real.
        consistency(t, u) += qp.w * flux[u](comp[t]) * jump[t];
        if (comp[t] == comp[u]) {
          penalty(t, u) += qp.w * (nit.gamma / h) * jump[t] * jump[u];
        }
      }
    }
  }
  const Local12 local = consistency + consistency.adjoint() + penalty;

  std::array<int, 12> dofs{};
  for (int l = 0; l < 6; ++l) {
    dofs[l] = dofs_plus[l];
    dofs[6 + l] = dofs_minus[l];
  }
  for (int t = 0; t < 12; ++t) {
    for (int u = 0; u < 12; ++u) {
      if (local(t, u) != 0.0) acc.a.emplace_back(dofs[t], dofs[u], local(t, u));
    }
  }
}

SystemMatrices assemble_impl(FormRoute route, const Mesh& mesh, const std::vector<ElemTag>& tags,
                             const CutList& cuts, const DofMap& dofmap,
                             const MaterialParams& mats, const NitscheParams& nit,
                             const KPoint& kp) {
  if (tags.size() != mesh.triangles.size() || cuts.size() != mesh.triangles.size()) {
    throw std::logic_error("assemble: tags/cuts size does not match the mesh");
  }
  const Vec2 k = kp.k;
  Accumulator acc;
  acc.a.reserve(mesh.triangles.size() * 40);
  acc.b.reserve(mesh.triangles.size() * 40);

  for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
    const auto& t = mesh.triangles[e];
    const std::array<Vec2, 3> tri = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
    if (tags[e] == ElemTag::Cut) {
      if (!cuts[e]) throw std::logic_error("assemble: missing cut geometry for a cut element");
      const auto dofs_plus = element_dofs(dofmap, mesh, static_cast<int>(e), Side::Plus);
      const auto dofs_minus = element_dofs(dofmap, mesh, static_cast<int>(e), Side::Minus);
      accumulate_volume(acc, route, tri, cuts[e]->vol_quad_plus, mats.plus, k, dofs_plus);
      accumulate_volume(acc, route, tri, cuts[e]->vol_quad_minus, mats.minus, k, dofs_minus);
      accumulate_interface(acc, route, tri, *cuts[e], mats, nit, k, mesh.h, dofs_plus,
                           dofs_minus);
    } else {
      const Side s = tags[e] == ElemTag::InteriorPlus ? Side::Plus : Side::Minus;
      const auto dofs = element_dofs(dofmap, mesh, static_cast<int>(e), s);
      accumulate_volume(acc, route, tri, bulk_quadrature(tri), mats.side(s), k, dofs);
    }
  }

  SystemMatrices sys;
  sys.n_dofs = dofmap.n_dofs;
  sys.A.resize(dofmap.n_dofs, dofmap.n_dofs);
  sys.B.resize(dofmap.n_dofs, dofmap.n_dofs);
  sys.A.setFromTriplets(acc.a.begin(), acc.a.end());
  sys.B.setFromTriplets(acc.b.begin(), acc.b.end());
  sys.A.makeCompressed();
  sys.B.makeCompressed();
  return sys;
}

}  // namespace

MaterialParams::MaterialParams(const Material& matrix, const Material& inclusion)
    : plus(matrix), minus(inclusion) {
  for (const Material* m : {&plus, &minus}) {
    if (!(m->mu > 0.0) || m->lambda < 0.0 || !(m->rho > 0.0)) {
      throw std::invalid_argument("MaterialParams: need mu > 0, lambda >= 0, rho > 0");
    }
  }
}

NitscheParams NitscheParams::from(const MaterialParams& mats, double gamma_hat) {
  if (!(gamma_hat > 0.0)) throw std::invalid_argument("NitscheParams: gamma_hat must be positive");
  const double bp = mats.plus.beta();
  const double bm = mats.minus.beta();
  NitscheParams nit;
  nit.kappa_plus = bm / (bp + bm);
  nit.kappa_minus = bp / (bp + bm);
  nit.gamma_hat = gamma_hat;
  nit.gamma = gamma_hat * bp * bm / (bp + bm);
  return nit;
}

Eigen::Matrix2cd stiffness_apply(double mu, double lambda, const Eigen::Matrix2cd& strain) {
  Eigen::Matrix2cd out = 2.0 * mu * strain;
  const Complex tr = strain(0, 0) + strain(1, 1);
  out(0, 0) += lambda * tr;
  out(1, 1) += lambda * tr;
  return out;
}

Eigen::Matrix2cd shifted_strain(const Eigen::Matrix2cd& grad_u, const KPoint& k,
                                const Eigen::Vector2cd& u) {
  const Eigen::Vector2cd kc(k.k.x(), k.k.y());
  const Eigen::Matrix2cd kxu = kc * u.transpose();
  return 0.5 * (grad_u + grad_u.transpose()) + 0.5 * kI * (kxu + kxu.transpose());
}

SystemMatrices assemble(const Mesh& mesh, const std::vector<ElemTag>& tags, const CutList& cuts,
                        const DofMap& dofmap, const MaterialParams& mats,
                        const NitscheParams& nit, const KPoint& k) {
  return assemble_impl(FormRoute::Tensor, mesh, tags, cuts, dofmap, mats, nit, k);
}

SystemMatrices assemble_alt(const Mesh& mesh, const std::vector<ElemTag>& tags,
                            const CutList& cuts, const DofMap& dofmap,
                            const MaterialParams& mats, const NitscheParams& nit,
                            const KPoint& k) {
  return assemble_impl(FormRoute::Expanded, mesh, tags, cuts, dofmap, mats, nit, k);
}

Eigen::Matrix<Complex, 6, 6> local_volume_matrix(const std::array<Vec2, 3>& tri, double mu,
                                                 double lambda, const KPoint& k,
                                                 const std::vector<QuadPoint>& quad) {
  Local6 a = Local6::Zero();
  Material mat;
  mat.mu = mu;
  mat.lambda = lambda;
  mat.rho = 1.0;
  for (const QuadPoint& qp : quad) {
    const ShapeEval se = shape_eval(tri, qp.x);
    const auto strains = side_shape_strains(se, k.k);
    for (int t = 0; t < 6; ++t) {
      for (int u = 0; u < 6; ++u) {
        a(t, u) += qp.w * volume_integrand(FormRoute::Tensor, mat, strains[u], strains[t]);
      }
    }
  }
  return a;
}

namespace {

// Field value and shifted strain of a coefficient vector on one element side.
struct SideField {
  Vec2c value;
  Mat2c strain;
};

SideField evaluate_side(const Eigen::VectorXcd& coeffs, const std::array<int, 6>& dofs,
                        const ShapeEval& se, const Vec2& k) {
  SideField f;
  f.value = Vec2c::Zero();
  Mat2c grad = Mat2c::Zero();
  for (int v = 0; v < 3; ++v) {
    for (int c = 0; c < 2; ++c) {
      const Complex coef = coeffs[dofs[2 * v + c]];
      f.value(c) += coef * se.value[v];
      grad(c, 0) += coef * se.grad[v].x();
      grad(c, 1) += coef * se.grad[v].y();
    }
  }
  const Vec2c kc(k.x(), k.y());
  const Mat2c kxu = kc * f.value.transpose();
  f.strain = 0.5 * (grad + grad.transpose()) + 0.5 * kI * (kxu + kxu.transpose());
  return f;
}

}  // namespace

double energy_norm(const Eigen::VectorXcd& coeffs, const Mesh& mesh,
                   const std::vector<ElemTag>& tags, const CutList& cuts, const DofMap& dofmap,
                   const MaterialParams& mats, const NitscheParams& nit, const KPoint& kp) {
  if (coeffs.size() != dofmap.n_dofs) {
    throw std::invalid_argument("energy_norm: coefficient vector has wrong dimension");
  }
  const Vec2 k = kp.k;
  double total = 0.0;
  for (std::size_t e = 0; e < mesh.triangles.size(); ++e) {
    const auto& t = mesh.triangles[e];
    const std::array<Vec2, 3> tri = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};

    auto volume_energy = [&](Side s, const std::vector<QuadPoint>& quad) {
      const auto dofs = element_dofs(dofmap, mesh, static_cast<int>(e), s);
      const Material& mat = mats.side(s);
      for (const QuadPoint& qp : quad) {
        const ShapeEval se = shape_eval(tri, qp.x);
        const SideField f = evaluate_side(coeffs, dofs, se, k);
        total += qp.w * std::real(frobenius(stiffness_apply(mat.mu, mat.lambda, f.strain),
                                            f.strain));
      }
    };

    if (tags[e] == ElemTag::Cut) {
      volume_energy(Side::Plus, cuts[e]->vol_quad_plus);
      volume_energy(Side::Minus, cuts[e]->vol_quad_minus);

      const auto dofs_plus = element_dofs(dofmap, mesh, static_cast<int>(e), Side::Plus);
      const auto dofs_minus = element_dofs(dofmap, mesh, static_cast<int>(e), Side::Minus);
      const Vec2c n(cuts[e]->normal.x(), cuts[e]->normal.y());
      for (const QuadPoint& qp : cuts[e]->line_quad) {
        const ShapeEval se = shape_eval(tri, qp.x);
        const SideField fp = evaluate_side(coeffs, dofs_plus, se, k);
        const SideField fm = evaluate_side(coeffs, dofs_minus, se, k);
        const Vec2c flux =
            nit.kappa_plus *
                (stiffness_apply(mats.plus.mu, mats.plus.lambda, fp.strain) * n) +
            nit.kappa_minus *
                (stiffness_apply(mats.minus.mu, mats.minus.lambda, fm.strain) * n);
        const Vec2c jump = fp.value - fm.value;
        total += qp.w * mesh.h * flux.squaredNorm();
        total += qp.w * (nit.gamma / mesh.h) * jump.squaredNorm();
      }
    } else {
      const Side s = tags[e] == ElemTag::InteriorPlus ? Side::Plus : Side::Minus;
      volume_energy(s, bulk_quadrature(tri));
    }
  }
  return std::sqrt(std::max(total, 0.0));
}

double coercivity_min_ratio(const SystemMatrices& sys, const Mesh& mesh,
                            const std::vector<ElemTag>& tags, const CutList& cuts,
                            const DofMap& dofmap, const MaterialParams& mats,
                            const NitscheParams& nit, const KPoint& k, int n_samples,
                            unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_samples; ++s) {
    Eigen::VectorXcd u(sys.n_dofs);
    for (int i = 0; i < sys.n_dofs; ++i) u[i] = Complex(dist(rng), dist(rng));
    const double quad_form = std::real(u.dot(sys.A * u));  // u^H A u
    const double norm = energy_norm(u, mesh, tags, cuts, dofmap, mats, nit, k);
    if (norm > 0.0) min_ratio = std::min(min_ratio, quad_form / (norm * norm));
  }
  return min_ratio;
}

double max_abs(const SparseC& m) {
  double out = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseC::InnerIterator it(m, k); it; ++it) {
      out = std::max(out, std::abs(it.value()));
    }
  }
  return out;
}

double hermitian_defect(const SparseC& m) {
  const SparseC diff = SparseC(m - SparseC(m.adjoint()));
  return max_abs(diff);
}

void write_coordinate(std::ostream& os, const SparseC& m) {
  char line[128];
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseC::InnerIterator it(m, k); it; ++it) {
      std::snprintf(line, sizeof(line), "%ld %ld %.17g %.17g\n", static_cast<long>(it.row()),
                    static_cast<long>(it.col()), std::real(it.value()), std::imag(it.value()));
      os << line;
    }
  }
}

}  // namespace phononic
