// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_ASSEMBLY_HPP
#define PHONONIC_ASSEMBLY_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <iosfwd>
#include <optional>
#include <vector>

#include "phononic/cutquad.hpp"
#include "phononic/geometry.hpp"
#include "phononic/mesh.hpp"
#include "phononic/space.hpp"

namespace phononic {

using Complex = std::complex<double>;
using SparseC = Eigen::SparseMatrix<Complex>;

// Isotropic elastic material: Lame parameters and mass density.
struct Material {
  double lambda = 0.0;  // first Lame parameter (N/m^2)
  double mu = 0.0;      // shear modulus (N/m^2)
  double rho = 0.0;     // density (kg/m^3)

  double beta() const { return 2.0 * mu + lambda; }
  double transverse_speed() const { return std::sqrt(mu / rho); }
  double longitudinal_speed() const { return std::sqrt((lambda + 2.0 * mu) / rho); }
};

// Matrix (+) and inclusion (-) materials. Validates positivity.
struct MaterialParams {
  Material plus;
  Material minus;

  MaterialParams(const Material& matrix, const Material& inclusion);

  const Material& side(Side s) const { return s == Side::Plus ? plus : minus; }
};

// Interface weights kappa^+- and penalty gamma = gamma_hat * beta+ beta- /
// (beta+ + beta-). gamma_hat must be large enough for coercivity; 100 is
// the default used throughout.
struct NitscheParams {
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
  double gamma_hat = 0.0;
  double gamma = 0.0;

  static NitscheParams from(const MaterialParams& mats, double gamma_hat = 100.0);

  double kappa(Side s) const { return s == Side::Plus ? kappa_plus : kappa_minus; }
};

// Hooke's law: C E = 2 mu E + lambda tr(E) I.
Eigen::Matrix2cd stiffness_apply(double mu, double lambda, const Eigen::Matrix2cd& strain);

// Shifted strain of the Bloch-transformed field:
// grad_k (.) u = sym(grad_u) + i sym(k (x) u).
Eigen::Matrix2cd shifted_strain(const Eigen::Matrix2cd& grad_u, const KPoint& k,
                                const Eigen::Vector2cd& u);

// Hermitian stiffness A(k) and positive-definite mass B in compressed
// sparse form.
struct SystemMatrices {
  SparseC A;
  SparseC B;
  int n_dofs = 0;
};

using CutList = std::vector<std::optional<CutGeometry>>;

// Assembles the Nitsche sesquilinear form: per-side volume terms over the
// physical subdomains, the kappa-weighted consistency term on the interface
// chords, its Hermitian adjoint, and the gamma/h jump penalty. The mass
// matrix carries rho over the physical subdomains.
SystemMatrices assemble(const Mesh& mesh, const std::vector<ElemTag>& tags, const CutList& cuts,
                        const DofMap& dofmap, const MaterialParams& mats,
                        const NitscheParams& nit, const KPoint& k);

// Algebraically equivalent route with the volume and flux integrands
// expanded as 2 mu (E : F) + lambda (tr E)(tr F); used as a cross-check of
// the tensor algebra in assemble().
SystemMatrices assemble_alt(const Mesh& mesh, const std::vector<ElemTag>& tags,
                            const CutList& cuts, const DofMap& dofmap,
                            const MaterialParams& mats, const NitscheParams& nit,
                            const KPoint& k);

// Local 6x6 volume stiffness of a single element side (no interface terms),
// exposed for verification against hand-computed P1 elasticity matrices.
Eigen::Matrix<Complex, 6, 6> local_volume_matrix(const std::array<Vec2, 3>& tri, double mu,
                                                 double lambda, const KPoint& k,
                                                 const std::vector<QuadPoint>& quad);

// Mesh-dependent triple norm of a coefficient vector: volume energy,
// h-weighted flux averages and (gamma/h)-weighted jumps on the interface.
double energy_norm(const Eigen::VectorXcd& coeffs, const Mesh& mesh,
                   const std::vector<ElemTag>& tags, const CutList& cuts, const DofMap& dofmap,
                   const MaterialParams& mats, const NitscheParams& nit, const KPoint& k);

// Minimum of Re a(u,u) / |||u|||^2 over seeded random coefficient vectors;
// the runtime coercivity diagnostic.
double coercivity_min_ratio(const SystemMatrices& mats_sys, const Mesh& mesh,
                            const std::vector<ElemTag>& tags, const CutList& cuts,
                            const DofMap& dofmap, const MaterialParams& mats,
                            const NitscheParams& nit, const KPoint& k, int n_samples = 100,
                            unsigned seed = 20240901);

// Largest entrywise magnitude.
double max_abs(const SparseC& m);

// max |M - M^H| over all entries.
double hermitian_defect(const SparseC& m);

// Coordinate text dump: one "row col re im" line per stored entry.
void write_coordinate(std::ostream& os, const SparseC& m);

}  // namespace phononic

#endif  // PHONONIC_ASSEMBLY_HPP
