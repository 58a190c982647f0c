#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expconvex/convexity.hpp"
#include "expconvex/matrix_io.hpp"

namespace expconvex {

struct VerifyOptions {
  std::size_t cases = 10;
  Index max_n = 7;
  std::uint64_t seed = 0;
  double psd_tol = kDefaultPsdTol;
  unsigned threads = 0;  // 0: hardware concurrency
  bool timings = false;  // elapsed times make the report nondeterministic
};

struct CheckRecord {
  std::size_t case_index = 0;
  std::uint64_t seed = 0;
  Index n = 0;
  std::string check;
  bool passed = false;
  double worst_metric = 0.0;  // NaN when the check threw
  std::string error;          // message of the exception, if any
  std::optional<double> elapsed_ms;
};

struct VerificationReport {
  VerifyOptions options;
  std::vector<CheckRecord> records;
  std::size_t failures = 0;
};

/// Names of the per-case checks, in report order.
const std::vector<std::string>& verification_checks();

/// Runs every check on `cases` seeded rank-one instances. Each case seeds its
/// own generator from (seed, index), so the record order and values do not
/// depend on scheduling.
VerificationReport run_verification(const VerifyOptions& options);

Json report_to_json(const VerificationReport& report);

}  // namespace expconvex
