#include <iostream>

#include "CLI11.hpp"

#include "expconvex/commands.hpp"

int main(int argc, char** argv) {
  using namespace expconvex;

  CLI::App app{"Exponential convexity of tr exp(tA+B): reduction, Gram checks, measure fitting"};
  app.require_subcommand(1);

  ReduceOptions reduce_opt;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a rank-one pair (A, B) to (L, M)");
  reduce_cmd->add_option("input", reduce_opt.input, "Matrix file with A and B")->required();
  reduce_cmd->add_option("-o,--out", reduce_opt.output, "Output file (default stdout)");
  reduce_cmd->add_option("--rank-tol", reduce_opt.rank_tol, "Rank threshold (default 1e-9 * max|A|)");

  CheckEcOptions ec_opt;
  auto* ec_cmd = app.add_subcommand("check-ec", "Gram PSD test of t -> tr exp(tA+B)");
  ec_cmd->add_option("input", ec_opt.input, "Matrix file with A and B")->required();
  ec_cmd->add_option("--grid-n", ec_opt.grid_n, "Number of grid points")->capture_default_str();
  ec_cmd->add_option("--grid-lo", ec_opt.grid_lo, "Lowest grid point")->capture_default_str();
  ec_cmd->add_option("--grid-hi", ec_opt.grid_hi, "Highest grid point")->capture_default_str();
  ec_cmd->add_option("--tol", ec_opt.tol, "Relative PSD tolerance (default $EXPCONVEX_TOL or 1e-8)");

  FitMeasureOptions fit_opt;
  auto* fit_cmd = app.add_subcommand("fit-measure", "Fit a nonnegative atomic representing measure");
  fit_cmd->add_option("input", fit_opt.input, "Matrix file with A and B")->required();
  fit_cmd->add_option("-o,--out", fit_opt.output, "Output file (default stdout)");
  fit_cmd->add_option("--resolution", fit_opt.resolution, "Candidate atom count")->capture_default_str();
  fit_cmd->add_option("--reg", fit_opt.reg, "Ridge weight")->capture_default_str();
  fit_cmd->add_option("--t-points", fit_opt.t_points, "Number of samples of f")->capture_default_str();
  fit_cmd->add_option("--t-lo", fit_opt.t_lo, "First sample point")->capture_default_str();
  fit_cmd->add_option("--t-hi", fit_opt.t_hi, "Last sample point")->capture_default_str();

  VerifyCommandOptions verify_opt;
  auto* verify_cmd = app.add_subcommand("verify", "Run all checks on a seeded random ensemble");
  verify_cmd->add_option("--cases", verify_opt.cases, "Number of random instances")->capture_default_str();
  verify_cmd->add_option("--max-n", verify_opt.max_n, "Largest dimension (2..12)")->capture_default_str();
  verify_cmd->add_option("--seed", verify_opt.seed, "Master seed")->capture_default_str();
  verify_cmd->add_option("--out", verify_opt.output, "Report file (default stdout)");
  verify_cmd->add_option("--threads", verify_opt.threads, "Worker threads (0: all cores)");
  verify_cmd->add_flag("--timings", verify_opt.timings, "Record elapsed times (report no longer reproducible)");
  verify_cmd->add_option("--tol", verify_opt.tol, "Relative PSD tolerance (default $EXPCONVEX_TOL or 1e-8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*reduce_cmd) return cmd_reduce(reduce_opt, std::cerr);
  if (*ec_cmd) return cmd_check_ec(ec_opt, std::cout, std::cerr);
  if (*fit_cmd) return cmd_fit_measure(fit_opt, std::cerr);
  return cmd_verify(verify_opt, std::cerr);
}
