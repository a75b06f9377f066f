// SPDX-License-Identifier: Apache-2.0

#include "phononic/band.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "phononic/errors.hpp"

namespace phononic {

Discretization build_discretization(const RunConfig& cfg, int n) {
  const LatticeSpec lattice = cfg.lattice();
  Discretization disc{build_uniform(lattice, n, cfg.diagonal),
                      {},
                      {},
                      {},
                      cfg.materials(),
                      NitscheParams::from(cfg.materials(), cfg.gamma_hat)};
  const std::optional<LevelSet> ls = make_level_set(cfg.interface);
  if (ls) {
    check_interface_clearance(*ls, lattice);
    disc.tags = classify(disc.mesh, *ls, cfg.eps_cut);
    disc.cuts = build_cuts(disc.mesh, *ls, disc.tags);
  } else {
    disc.tags.assign(disc.mesh.triangles.size(), ElemTag::InteriorPlus);
    disc.cuts.resize(disc.mesh.triangles.size());
  }
  disc.dofmap = build_dofmap(disc.mesh, disc.tags);
  return disc;
}

EigenResult solve_at(const RunConfig& cfg, const Discretization& disc, const KPoint& k) {
  const SystemMatrices sys = assemble(disc.mesh, disc.tags, disc.cuts, disc.dofmap,
                                      disc.materials, disc.nitsche, k);
  SolverOptions opts;
  opts.m = std::min(cfg.num_bands, disc.dofmap.n_dofs);
  opts.tol = cfg.tol;
  opts.dense_threshold = cfg.dense_threshold;
  return solve_smallest(sys, opts);
}

namespace {

// omega = sqrt(omega^2) with eigenvalues that are zero up to solver noise
// (rigid modes at the O point) clamped to exactly zero.
Eigen::VectorXd normalize_frequencies(const Eigen::VectorXd& omega2, double a, double c_minus) {
  const double clamp = 1e-10 * std::max(omega2.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd out(omega2.size());
  for (int i = 0; i < omega2.size(); ++i) {
    const double w2 = std::abs(omega2[i]) <= clamp ? 0.0 : std::max(omega2[i], 0.0);
    out[i] = std::sqrt(w2) * a / (2.0 * std::numbers::pi * c_minus);
  }
  return out;
}

template <typename Fn>
void run_indexed(int count, int threads, Fn&& body) {
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const int i = cursor.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_workers = std::min(threads, count);
  pool.reserve(n_workers);
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

[[noreturn]] void rethrow_with_k(const Vec2& k, const std::exception& err) {
  std::ostringstream os;
  os << "at k = (" << k.x() << ", " << k.y() << "): " << err.what();
  throw NumericalError(os.str());
}

}  // namespace

BandStructure compute_bands(const RunConfig& cfg, const KPath& path, int m, int threads) {
  const Discretization disc = build_discretization(cfg, cfg.n);
  const std::vector<PathSample> samples = sample_path(path);
  const double c_minus = cfg.normalization_speed();

  BandStructure bands;
  bands.band_count = std::min(m, disc.dofmap.n_dofs);
  bands.vertex_marks = path_vertex_marks(path);
  bands.samples.resize(samples.size());

  run_indexed(static_cast<int>(samples.size()), threads, [&](int i) {
    const KPoint k{samples[i].k};
    try {
      EigenResult result = solve_at(cfg, disc, k);
      BandSample& out = bands.samples[i];
      out.arc_param = samples[i].arc_param;
      out.k = samples[i].k;
      out.omega2 = result.eigenvalues.head(bands.band_count);
      out.normalized = normalize_frequencies(out.omega2, cfg.a, c_minus);
    } catch (const NumericalError& err) {
      rethrow_with_k(samples[i].k, err);
    }
  });
  return bands;
}

GapReport detect_gaps(const BandStructure& bands) {
  if (bands.band_count < 2 || bands.samples.empty()) {
    throw std::invalid_argument("detect_gaps: need a band structure with at least 2 bands");
  }
  const int m = bands.band_count;
  Eigen::VectorXd band_max = Eigen::VectorXd::Constant(m, -1.0);
  Eigen::VectorXd band_min =
      Eigen::VectorXd::Constant(m, std::numeric_limits<double>::infinity());
  for (const BandSample& s : bands.samples) {
    for (int b = 0; b < m; ++b) {
      band_max[b] = std::max(band_max[b], s.normalized[b]);
      band_min[b] = std::min(band_min[b], s.normalized[b]);
    }
  }
  GapReport gaps;
  for (int b = 0; b + 1 < m; ++b) {
    if (band_min[b + 1] > band_max[b]) {
      gaps.push_back({b + 1, band_max[b], band_min[b + 1], band_min[b + 1] - band_max[b]});
    }
  }
  return gaps;
}

ConvergenceReport convergence_study(const RunConfig& cfg, const KPoint& k,
                                    const std::vector<int>& levels, int m, int threads) {
  if (levels.size() < 3) {
    throw ConfigError("convergence.levels: need at least 3 mesh levels");
  }
  for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
    if (levels[j] < 2 || levels[j + 1] % levels[j] != 0 || levels[j + 1] <= levels[j]) {
      throw ConfigError("convergence.levels: levels must ascend and divide evenly");
    }
  }

  const int n_levels = static_cast<int>(levels.size());
  ConvergenceReport report;
  report.levels = levels;
  report.omega2.resize(n_levels, m);

  run_indexed(n_levels, threads, [&](int j) {
    const Discretization disc = build_discretization(cfg, levels[j]);
    try {
      RunConfig level_cfg = cfg;
      level_cfg.num_bands = m;
      const EigenResult result = solve_at(level_cfg, disc, k);
      report.omega2.row(j) = result.eigenvalues.head(m).transpose();
    } catch (const NumericalError& err) {
      rethrow_with_k(k.k, err);
    }
  });

  report.rel_err.resize(n_levels - 1, m);
  for (int j = 0; j + 1 < n_levels; ++j) {
    for (int i = 0; i < m; ++i) {
      report.rel_err(j, i) = std::abs(report.omega2(j, i) - report.omega2(j + 1, i)) /
                             std::abs(report.omega2(j, i));
    }
  }
  report.rate.resize(n_levels - 2, m);
  for (int j = 0; j + 2 < n_levels; ++j) {
    for (int i = 0; i < m; ++i) {
      report.rate(j, i) = std::log2(report.rel_err(j, i) / report.rel_err(j + 1, i));
    }
  }
  return report;
}

}  // namespace phononic
