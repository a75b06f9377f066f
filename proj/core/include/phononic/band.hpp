// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_BAND_HPP
#define PHONONIC_BAND_HPP

#include <string>
#include <utility>
#include <vector>

#include "phononic/config.hpp"
#include "phononic/eigensolver.hpp"

namespace phononic {

// One configured mesh level: classified mesh, cut geometry, DOF map and
// material/Nitsche parameters. Immutable after construction and shared
// across k-point workers.
struct Discretization {
  Mesh mesh;
  std::vector<ElemTag> tags;
  CutList cuts;
  DofMap dofmap;
  MaterialParams materials;
  NitscheParams nitsche;
};

Discretization build_discretization(const RunConfig& cfg, int n);

// Assemble-and-solve at one quasi-momentum.
EigenResult solve_at(const RunConfig& cfg, const Discretization& disc, const KPoint& k);

struct BandSample {
  double arc_param = 0.0;
  Vec2 k;
  Eigen::VectorXd omega2;      // ascending
  Eigen::VectorXd normalized;  // omega a / (2 pi c^-), zero modes clamped
};

struct BandStructure {
  std::vector<BandSample> samples;
  int band_count = 0;
  std::vector<std::pair<double, std::string>> vertex_marks;
};

// Sweeps the path; k-samples are dispatched to `threads` workers and the
// result is ordered by arc parameter regardless of completion order.
BandStructure compute_bands(const RunConfig& cfg, const KPath& path, int m, int threads = 1);

struct Gap {
  int lower_band = 0;     // 1-based index of the band below the gap
  double bottom = 0.0;    // max over the path of that band
  double top = 0.0;       // min over the path of the next band
  double width = 0.0;
};

using GapReport = std::vector<Gap>;

// A gap between bands i and i+1 is reported iff the minimum of band i+1
// over all samples exceeds the maximum of band i.
GapReport detect_gaps(const BandStructure& bands);

struct ConvergenceReport {
  std::vector<int> levels;
  Eigen::MatrixXd omega2;   // levels x m
  Eigen::MatrixXd rel_err;  // (levels-1) x m, e_i between successive levels
  Eigen::MatrixXd rate;     // (levels-2) x m, log2 of successive error ratios
};

// Eigenvalues per mesh level at fixed k, successive relative errors
// e_i = |w2_i(h_j) - w2_i(h_{j+1})| / w2_i(h_j) and their log2 ratios.
// Needs at least 3 levels, each a multiple of the previous one.
ConvergenceReport convergence_study(const RunConfig& cfg, const KPoint& k,
                                    const std::vector<int>& levels, int m, int threads = 1);

}  // namespace phononic

#endif  // PHONONIC_BAND_HPP
