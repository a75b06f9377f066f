// SPDX-License-Identifier: Apache-2.0

#ifndef PHONONIC_CLI_HPP
#define PHONONIC_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "phononic/band.hpp"

namespace phononic {

// Command-line overrides on top of the configuration file. Environment
// variables PHONONIC_THREADS and PHONONIC_OUT take precedence over both.
struct CliOptions {
  std::string config_path;
  std::optional<int> threads;
  std::optional<std::string> out_dir;
  bool svg = false;
};

// Effective thread count / output directory after applying the overrides.
int effective_threads(const CliOptions& opts);
std::string effective_out_dir(const CliOptions& opts, const RunConfig& cfg);

// bands: writes bands.csv, gaps.csv and optionally bands.svg. Returns the
// process exit code (0 ok, 2 configuration error, 3 numerical failure).
int cmd_bands(const CliOptions& opts);

// converge: writes converge.csv (level,N,h,eig_index,omega2,rel_err,rate).
int cmd_converge(const CliOptions& opts);

// dump: writes A.coo, B.coo (coordinate text) and dump_summary.json for the
// pencil assembled at the given quasi-momentum.
int cmd_dump(const CliOptions& opts, double kx, double ky);

// CSV bodies, exposed for tests; 17 significant digits, '\n' line endings.
void write_bands_csv(std::ostream& os, const BandStructure& bands);
void write_gaps_csv(std::ostream& os, const GapReport& gaps);
void write_converge_csv(std::ostream& os, const ConvergenceReport& report);

// Static band-diagram plot (polylines over arclength with vertex labels).
void write_band_svg(std::ostream& os, const BandStructure& bands);

}  // namespace phononic

#endif  // PHONONIC_CLI_HPP
