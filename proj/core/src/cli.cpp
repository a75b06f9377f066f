// SPDX-License-Identifier: Apache-2.0

#include "phononic/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "phononic/errors.hpp"

namespace phononic {

namespace {

// 17 significant digits; enough to round-trip any double.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream os(path, std::ios::binary);  // '\n' endings on every platform
  if (!os) throw ConfigError("output.dir: cannot write \"" + path.string() + "\"");
  return os;
}

int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return 3;
  }
}

}  // namespace

int effective_threads(const CliOptions& opts) {
  if (const char* env = std::getenv("PHONONIC_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  if (opts.threads) return std::max(1, *opts.threads);
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string effective_out_dir(const CliOptions& opts, const RunConfig& cfg) {
  if (const char* env = std::getenv("PHONONIC_OUT")) return env;
  if (opts.out_dir) return *opts.out_dir;
  return cfg.out_dir;
}

void write_bands_csv(std::ostream& os, const BandStructure& bands) {
  os << "arc_param,kx,ky,band,omega2,normalized_freq\n";
  for (const BandSample& s : bands.samples) {
    for (int b = 0; b < bands.band_count; ++b) {
      os << fmt(s.arc_param) << "," << fmt(s.k.x()) << "," << fmt(s.k.y()) << "," << (b + 1)
         << "," << fmt(s.omega2[b]) << "," << fmt(s.normalized[b]) << "\n";
    }
  }
}

void write_gaps_csv(std::ostream& os, const GapReport& gaps) {
  os << "band_low,bottom,top,width\n";
  for (const Gap& g : gaps) {
    os << g.lower_band << "," << fmt(g.bottom) << "," << fmt(g.top) << "," << fmt(g.width)
       << "\n";
  }
}

void write_converge_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "level,N,h,eig_index,omega2,rel_err,rate\n";
  const int n_levels = static_cast<int>(report.levels.size());
  const int m = static_cast<int>(report.omega2.cols());
  for (int j = 0; j < n_levels; ++j) {
    for (int i = 0; i < m; ++i) {
      os << j << "," << report.levels[j] << "," << fmt(1.0 / report.levels[j]) << "," << (i + 1)
         << "," << fmt(report.omega2(j, i)) << ",";
      os << (j < report.rel_err.rows() ? fmt(report.rel_err(j, i)) : "nan") << ",";
      os << (j < report.rate.rows() ? fmt(report.rate(j, i)) : "nan") << "\n";
    }
  }
}

int cmd_bands(const CliOptions& opts) {
  return run_guarded([&] {
    RunConfig cfg = load_run_config(opts.config_path);
    const std::string out_dir = effective_out_dir(opts, cfg);
    const int threads = effective_threads(opts);

    const BandStructure bands = compute_bands(cfg, cfg.path, cfg.num_bands, threads);
    const GapReport gaps = detect_gaps(bands);

    auto bands_csv = open_output(out_dir, "bands.csv");
    write_bands_csv(bands_csv, bands);
    auto gaps_csv = open_output(out_dir, "gaps.csv");
    write_gaps_csv(gaps_csv, gaps);
    if (cfg.svg || opts.svg) {
      auto svg = open_output(out_dir, "bands.svg");
      write_band_svg(svg, bands);
    }
  });
}

int cmd_converge(const CliOptions& opts) {
  return run_guarded([&] {
    RunConfig cfg = load_run_config(opts.config_path);
    if (!cfg.convergence_k || cfg.convergence_levels.empty()) {
      throw ConfigError("convergence: missing section (needs k and levels)");
    }
    const std::string out_dir = effective_out_dir(opts, cfg);
    const int threads = effective_threads(opts);

    const ConvergenceReport report = convergence_study(
        cfg, KPoint{*cfg.convergence_k}, cfg.convergence_levels, cfg.convergence_eigs, threads);

    auto csv = open_output(out_dir, "converge.csv");
    write_converge_csv(csv, report);
  });
}

int cmd_dump(const CliOptions& opts, double kx, double ky) {
  return run_guarded([&] {
    RunConfig cfg = load_run_config(opts.config_path);
    const std::string out_dir = effective_out_dir(opts, cfg);

    const Discretization disc = build_discretization(cfg, cfg.n);
    const KPoint k{Vec2(kx, ky)};
    const SystemMatrices sys = assemble(disc.mesh, disc.tags, disc.cuts, disc.dofmap,
                                        disc.materials, disc.nitsche, k);

    auto a_coo = open_output(out_dir, "A.coo");
    write_coordinate(a_coo, sys.A);
    auto b_coo = open_output(out_dir, "B.coo");
    write_coordinate(b_coo, sys.B);

    nlohmann::json summary;
    summary["n_dofs"] = sys.n_dofs;
    summary["nnz_A"] = static_cast<long>(sys.A.nonZeros());
    summary["nnz_B"] = static_cast<long>(sys.B.nonZeros());
    summary["hermitian_defect_A"] = hermitian_defect(sys.A);
    summary["hermitian_defect_B"] = hermitian_defect(sys.B);
    summary["max_abs_A"] = max_abs(sys.A);
    summary["max_abs_B"] = max_abs(sys.B);
    summary["coercivity_min_ratio"] = coercivity_min_ratio(
        sys, disc.mesh, disc.tags, disc.cuts, disc.dofmap, disc.materials, disc.nitsche, k);

    auto js = open_output(out_dir, "dump_summary.json");
    js << summary.dump(2) << "\n";
  });
}

}  // namespace phononic
