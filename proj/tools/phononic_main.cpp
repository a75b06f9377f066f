// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include "phononic/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Phononic-crystal band structures by an unfitted Nitsche finite element method"};
  app.require_subcommand(1);

  phononic::CliOptions opts;
  int threads = 0;
  std::string out_dir;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "Path to the JSON configuration file")
        ->required();
    cmd->add_option("--threads", threads, "Worker threads (1 = deterministic reference mode)");
    cmd->add_option("--out", out_dir, "Output directory (overrides the config)");
    cmd->add_flag("--svg", opts.svg, "Also emit an SVG band diagram");
  };

  CLI::App* bands = app.add_subcommand("bands", "Sweep the k-path and write band data");
  add_common(bands);
  CLI::App* converge = app.add_subcommand("converge", "Run the mesh-convergence study");
  add_common(converge);
  CLI::App* dump = app.add_subcommand("dump", "Dump the assembled matrices at one k-point");
  add_common(dump);
  double kx = 0.0, ky = 0.0;
  dump->add_option("kx", kx, "Quasi-momentum x component")->required();
  dump->add_option("ky", ky, "Quasi-momentum y component")->required();

  CLI11_PARSE(app, argc, argv);

  if (threads > 0) opts.threads = threads;
  if (!out_dir.empty()) opts.out_dir = out_dir;

  if (bands->parsed()) return phononic::cmd_bands(opts);
  if (converge->parsed()) return phononic::cmd_converge(opts);
  return phononic::cmd_dump(opts, kx, ky);
}
