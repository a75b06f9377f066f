// SPDX-License-Identifier: Apache-2.0

#include "phononic/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseLU>

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "phononic/errors.hpp"

namespace phononic {

namespace {

void validate_inputs(const SystemMatrices& mats, const SolverOptions& opts) {
  if (mats.A.rows() != mats.n_dofs || mats.B.rows() != mats.n_dofs) {
    throw std::logic_error("solve_smallest: matrix dimensions disagree with n_dofs");
  }
  if (opts.m < 1 || opts.m > mats.n_dofs) {
    throw std::invalid_argument("solve_smallest: m must satisfy 1 <= m <= n_dofs");
  }
  if (hermitian_defect(mats.A) > 1e-10 * max_abs(mats.A) ||
      hermitian_defect(mats.B) > 1e-10 * max_abs(mats.B)) {
    throw std::invalid_argument("solve_smallest: input pencil is not Hermitian");
  }
}

// Relative residuals of candidate pairs; eigenvectors assumed B-normalized.
Eigen::VectorXd relative_residuals(const SystemMatrices& mats, const Eigen::VectorXd& values,
                                   const Eigen::MatrixXcd& vectors) {
  const double scale_a = max_abs(mats.A);
  const double scale_b = max_abs(mats.B);
  Eigen::VectorXd res(values.size());
  for (int i = 0; i < values.size(); ++i) {
    const Eigen::VectorXcd u = vectors.col(i);
    const double bnorm = std::sqrt(std::abs(std::real(u.dot(mats.B * u))));
    const double raw = (mats.A * u - values[i] * (mats.B * u)).norm();
    res[i] = raw / ((scale_a + std::abs(values[i]) * scale_b) * std::max(bnorm, 1e-300));
  }
  return res;
}

void enforce_residual_contract(const EigenResult& result, double tol) {
  if ((result.residuals.array() <= tol).all()) return;
  std::ostringstream os;
  os << "eigensolver: residual contract violated (tol " << tol << "); attained:";
  for (int i = 0; i < result.residuals.size(); ++i) os << " " << result.residuals[i];
  throw NumericalError(os.str());
}

// Rayleigh-Ritz over a growing B-orthonormal basis steered by the
// shift-inverted operator (A + sigma B)^{-1} B. The positive shift keeps the
// factorization definite at k = 0 (rigid modes) and is subtracted exactly
// from the Ritz values. After first convergence the solver injects random
// probe blocks and chases them through the operator a few times, so copies
// of degenerate eigenvalues that a single Krylov sweep cannot reach still
// surface before the result is accepted.
class ShiftInvertSolver {
public:
  ShiftInvertSolver(const SystemMatrices& mats, const SolverOptions& opts)
      : mats_(mats), opts_(opts), n_(mats.n_dofs), rng_(opts.seed) {
    scale_a_ = max_abs(mats_.A);
    scale_b_ = max_abs(mats_.B);
    double trace = 0.0;
    for (int i = 0; i < n_; ++i) trace += std::real(mats_.A.coeff(i, i));
    sigma_ = 1e-8 * trace / n_;
    shifted_ = mats_.A + sigma_ * mats_.B;
    lu_.compute(shifted_);
    if (lu_.info() != Eigen::Success) {
      throw NumericalError(
          "solve_shift_invert: factorization of the shifted pencil failed "
          "(ill-conditioned mass or stiffness); consider adjusting eps_cut");
    }
    const int cap = std::min<long>(n_, std::max(6 * opts_.m + 40, 80));
    basis_.resize(n_, cap);
    sv_.resize(n_, cap);
    bv_.resize(n_, cap);
    h_ = Eigen::MatrixXcd::Zero(cap, cap);
  }

  EigenResult run() {
    const int block = std::min(2, n_);
    Eigen::MatrixXcd next = random_block(block);
    int probes_done = 0;
    int chain_left = 0;
    Eigen::VectorXd snapshot;

    for (int step = 0; step < opts_.max_block_steps; ++step) {
      if (cols_ + block > basis_.cols()) compress();
      const int before = cols_;
      append_block(next);
      ritz();

      if (chain_left > 0) {
        // Keep chasing the probe block through the operator.
        --chain_left;
        if (cols_ > before) {
          next = lu_.solve(mats_.B * basis_.middleCols(before, cols_ - before));
        } else {
          next = lu_.solve(mats_.B * random_block(block));
        }
        continue;
      }

      if (cols_ >= opts_.m && converged()) {
        const Eigen::VectorXd current = theta_.head(opts_.m);
        if (probes_done == 0 && cols_ < n_) {
          snapshot = current;
          ++probes_done;
          chain_left = 6;
          next = random_block(block);
          continue;
        }
        const double drift =
            probes_done == 0
                ? 0.0
                : (current - snapshot).cwiseAbs().maxCoeff() /
                      std::max(1.0, current.cwiseAbs().maxCoeff());
        if (drift > 1e-10 && probes_done < 3 && cols_ < n_) {
          snapshot = current;
          ++probes_done;
          chain_left = 6;
          next = random_block(block);
          continue;
        }
        return extract();
      }

      const int lead = std::min<int>(first_unconverged(), std::max(0, cols_ - block));
      const int count = std::min(block, cols_ - lead);
      next = lu_.solve(mats_.B * ritz_vectors(lead, count));
    }

    ritz();
    EigenResult partial = extract_unchecked();
    std::ostringstream os;
    os << "solve_shift_invert: no convergence within the iteration budget; residuals:";
    for (int i = 0; i < partial.residuals.size(); ++i) os << " " << partial.residuals[i];
    throw NumericalError(os.str());
  }

private:
  Eigen::MatrixXcd random_block(int b) {
    std::normal_distribution<double> dist;
    Eigen::MatrixXcd x(n_, b);
    for (int j = 0; j < b; ++j) {
      for (int i = 0; i < n_; ++i) x(i, j) = Complex(dist(rng_), dist(rng_));
    }
    return x;
  }

  // B-orthonormalizes the columns of w against the basis and appends the
  // survivors together with their S- and B-images and the new rows/columns
  // of the projected matrix H = V^H S V.
  void append_block(const Eigen::MatrixXcd& w) {
    for (int j = 0; j < w.cols() && cols_ < basis_.cols(); ++j) {
      Eigen::VectorXcd v = w.col(j);
      Eigen::VectorXcd bv = mats_.B * v;
      const double norm0 = std::sqrt(std::abs(std::real(v.dot(bv))));
      double norm = 0.0;
      for (int attempt = 0; attempt < 4; ++attempt) {
        for (int pass = 0; pass < 2; ++pass) {
          if (cols_ > 0) {
            v -= basis_.leftCols(cols_) * (bv_.leftCols(cols_).adjoint() * v).eval();
          }
        }
        bv = mats_.B * v;
        norm = std::sqrt(std::abs(std::real(v.dot(bv))));
        if (norm > 1e-8 * std::max(norm0, 1e-300)) break;
        v = random_block(1).col(0);
        bv = mats_.B * v;
        norm = 0.0;
      }
      if (norm <= 0.0) continue;
      v /= norm;
      basis_.col(cols_) = v;
      bv_.col(cols_) = mats_.B * v;
      sv_.col(cols_) = shifted_ * v;
      const Eigen::VectorXcd hcol = basis_.leftCols(cols_ + 1).adjoint() * sv_.col(cols_);
      h_.col(cols_).head(cols_ + 1) = hcol;
      h_.row(cols_).head(cols_).noalias() = hcol.head(cols_).adjoint();
      ++cols_;
    }
  }

  void ritz() {
    Eigen::MatrixXcd h = h_.topLeftCorner(cols_, cols_);
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    theta_ = eig.eigenvalues().array() - sigma_;
    q_ = eig.eigenvectors();

    const int mm = std::min(opts_.m, cols_);
    residuals_.resize(mm);
    for (int i = 0; i < mm; ++i) {
      const Eigen::VectorXcd r = sv_.leftCols(cols_) * q_.col(i) -
                                 (theta_[i] + sigma_) * (bv_.leftCols(cols_) * q_.col(i));
      residuals_[i] = r.norm() / (scale_a_ + std::abs(theta_[i]) * scale_b_);
    }
  }

  bool converged() const {
    return residuals_.size() >= opts_.m && (residuals_.array() <= opts_.tol).all();
  }

  int first_unconverged() const {
    for (int i = 0; i < residuals_.size(); ++i) {
      if (residuals_[i] > opts_.tol) return i;
    }
    return 0;
  }

  Eigen::MatrixXcd ritz_vectors(int first, int count) const {
    return basis_.leftCols(cols_) * q_.block(0, first, cols_, count);
  }

  // Thick restart: keep the leading Ritz vectors and rebuild the projection.
  void compress() {
    const int keep = std::min<int>(cols_ - 1, opts_.m + 14);
    const Eigen::MatrixXcd kept = ritz_vectors(0, keep);
    cols_ = 0;
    append_block(kept);
  }

  EigenResult extract_unchecked() {
    const int mm = std::min(opts_.m, cols_);
    EigenResult result;
    result.eigenvalues = theta_.head(mm);
    result.eigenvectors = ritz_vectors(0, mm);
    result.residuals = relative_residuals(mats_, result.eigenvalues, result.eigenvectors);
    return result;
  }

  EigenResult extract() {
    EigenResult result = extract_unchecked();
    enforce_residual_contract(result, opts_.tol);
    return result;
  }

  const SystemMatrices& mats_;
  const SolverOptions& opts_;
  int n_;
  std::mt19937_64 rng_;
  double scale_a_ = 0.0, scale_b_ = 0.0;
  double sigma_ = 0.0;
  SparseC shifted_;
  Eigen::SparseLU<SparseC> lu_;
  Eigen::MatrixXcd basis_, sv_, bv_;
  Eigen::MatrixXcd h_;
  int cols_ = 0;
  Eigen::VectorXd theta_;
  Eigen::MatrixXcd q_;
  Eigen::VectorXd residuals_;
};

}  // namespace

EigenResult solve_dense(const SystemMatrices& mats, const SolverOptions& opts) {
  validate_inputs(mats, opts);
  const int n = mats.n_dofs;
  Eigen::MatrixXcd a = Eigen::MatrixXcd(mats.A);
  Eigen::MatrixXcd b = Eigen::MatrixXcd(mats.B);
  Eigen::VectorXd w(n);

  const int info =
      LAPACKE_zhegvd(LAPACK_COL_MAJOR, 1, 'V', 'L', n, a.data(), n, b.data(), n, w.data());
  if (info > n) {
    throw NumericalError(
        "solve_dense: mass matrix factorization failed (ill-conditioned B); "
        "consider adjusting eps_cut");
  }
  if (info != 0) {
    throw NumericalError("solve_dense: LAPACK zhegvd failed with info " + std::to_string(info));
  }

  EigenResult result;
  result.eigenvalues = w.head(opts.m);
  result.eigenvectors = a.leftCols(opts.m);
  result.residuals = relative_residuals(mats, result.eigenvalues, result.eigenvectors);
  enforce_residual_contract(result, opts.tol);
  return result;
}

EigenResult solve_shift_invert(const SystemMatrices& mats, const SolverOptions& opts) {
  validate_inputs(mats, opts);
  ShiftInvertSolver solver(mats, opts);
  return solver.run();
}

EigenResult solve_smallest(const SystemMatrices& mats, const SolverOptions& opts) {
  validate_inputs(mats, opts);
  if (mats.n_dofs <= opts.dense_threshold) return solve_dense(mats, opts);
  return solve_shift_invert(mats, opts);
}

double b_orthonormality_defect(const SystemMatrices& mats, const Eigen::MatrixXcd& vectors) {
  const Eigen::MatrixXcd gram = vectors.adjoint() * (mats.B * vectors);
  const Eigen::MatrixXcd defect =
      gram - Eigen::MatrixXcd::Identity(vectors.cols(), vectors.cols());
  return defect.cwiseAbs().maxCoeff();
}

}  // namespace phononic
