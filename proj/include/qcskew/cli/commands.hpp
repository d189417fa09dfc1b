#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qcskew/cli/report.hpp"
#include "qcskew/sampling.hpp"

namespace qcskew::cli {

/// Parsed command line. Options a subcommand does not use are ignored.
struct RunConfig {
  std::string command;
  std::string map;
  std::string region = "disk:0,0,1";
  std::optional<std::string> at;
  SamplingPlan plan;
  std::string out;
  std::string format = "json";

  // linear
  std::optional<double> mu;
  std::optional<double> sigma;
  std::optional<double> tau;
  std::size_t oracle_grid = 1000000;

  // lattice
  unsigned k = 3;
  bool check_pq = false;
  std::size_t pairs = 1000;
  double slack = 0.01;

  // constants
  double chain_sigma = 1.0;
  std::uint64_t chain_N = std::uint64_t{1} << 18;
  bool verify_geometry = false;

  // highdim
  std::string center;
  bool construct_b = false;
  std::string a = "0,1";
  double highdim_tolerance = 0.02;

  // grid-sample
  std::string domain = "-1,-1,1,1";
  std::size_t nx = 33;
  std::size_t ny = 33;
  std::string grid_out;
};

Report cmd_skew_scan(const RunConfig& config);
Report cmd_dilatation(const RunConfig& config);
Report cmd_linear(const RunConfig& config);
Report cmd_lattice(const RunConfig& config);
Report cmd_constants(const RunConfig& config);
Report cmd_highdim(const RunConfig& config);
Report cmd_grid_sample(const RunConfig& config);

/// Dispatches on config.command.
Report run_command(const RunConfig& config);

/// Full command-line entry point. Exit status: 0 when every bound passes,
/// 1 when some bound fails, 2 on usage or input errors.
int run_cli(int argc, char** argv);

}  // namespace qcskew::cli
