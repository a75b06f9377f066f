// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_EIGENSOLVER_HPP
#define PHONONIC_EIGENSOLVER_HPP

#include <Eigen/Dense>

#include "phononic/assembly.hpp"

namespace phononic {

// The m smallest eigenpairs of the Hermitian definite pencil (A, B).
//
// Residuals are reported in relative form,
//   ||A u - w^2 B u||_2 / ((max|A| + w^2 max|B|) ||u||_B),
// which removes the material-magnitude scale (Pa-sized entries) from the
// raw residual norm.
struct EigenResult {
  Eigen::VectorXd eigenvalues;   // ascending, size m
  Eigen::MatrixXcd eigenvectors;  // n x m, B-orthonormal
  Eigen::VectorXd residuals;     // per pair, relative
};

struct SolverOptions {
  int m = 10;
  double tol = 1e-9;
  // Dense LAPACK reduction up to this dimension, shift-invert Krylov above.
  int dense_threshold = 1200;
  unsigned seed = 0x5eed5eedu;
  int max_block_steps = 600;
};

EigenResult solve_smallest(const SystemMatrices& mats, const SolverOptions& opts);

// The two spectral-transformation routes behind solve_smallest, exposed so
// tests can run both on the same pencil.
EigenResult solve_dense(const SystemMatrices& mats, const SolverOptions& opts);
EigenResult solve_shift_invert(const SystemMatrices& mats, const SolverOptions& opts);

// max_{i,j} |u_i^H B u_j - delta_ij| over the computed eigenvectors.
double b_orthonormality_defect(const SystemMatrices& mats, const Eigen::MatrixXcd& vectors);

}  // namespace phononic

#endif  // PHONONIC_EIGENSOLVER_HPP
