#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "expconvex/convexity.hpp"
#include "expconvex/transform.hpp"

namespace expconvex {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,  // usage, I/O and parse errors
  kExitRank = 2,
  kExitCheckFailed = 3,
  kExitIllConditioned = 4,
};

/// PSD tolerance: EXPCONVEX_TOL when set to a valid nonnegative number,
/// kDefaultPsdTol otherwise.
double psd_tolerance_from_env();

struct ReduceOptions {
  std::filesystem::path input;
  std::filesystem::path output;  // empty or "-": stdout
  std::optional<double> rank_tol;
};

struct CheckEcOptions {
  std::filesystem::path input;
  long grid_n = 8;
  double grid_lo = -2.0;
  double grid_hi = 2.0;
  std::optional<double> tol;
};

struct FitMeasureOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  long resolution = 41;
  double reg = kDefaultFitReg;
  long t_points = 21;
  double t_lo = -2.0;
  double t_hi = 2.0;
  double holdout_tol = 1e-3;
};

struct VerifyCommandOptions {
  long cases = 10;
  long max_n = 7;
  std::uint64_t seed = 0;
  std::filesystem::path output;
  unsigned threads = 0;
  bool timings = false;
  std::optional<double> tol;
};

// Each command writes its document to the output path (stdout by default)
// and diagnostics to err, and returns an ExitCode.
int cmd_reduce(const ReduceOptions& opt, std::ostream& err);
int cmd_check_ec(const CheckEcOptions& opt, std::ostream& out, std::ostream& err);
int cmd_fit_measure(const FitMeasureOptions& opt, std::ostream& err);
int cmd_verify(const VerifyCommandOptions& opt, std::ostream& err);

}  // namespace expconvex
