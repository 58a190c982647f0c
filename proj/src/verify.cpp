#include "expconvex/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "expconvex/ensemble.hpp"
#include "expconvex/reduction.hpp"
#include "expconvex/transform.hpp"

namespace expconvex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Outcome {
  bool passed = false;
  double metric = 0.0;
};

double relative_gap(double x, double reference) { return std::abs(x - reference) / std::max(1.0, std::abs(reference)); }

Outcome check_reduction(const ReductionResult& r, const RankOneInstance& inst) {
  const ReductionResiduals res = reduction_residuals(r, inst.a, inst.b);
  const double metric = std::max({res.a_residual, res.b_residual, res.unitarity, res.block_offdiag,
                                  std::max(0.0, -res.min_last_column), res.max_last_column_imag});
  const bool ok = res.a_residual <= 1e-10 && res.b_residual <= 1e-10 && res.unitarity <= 1e-10 &&
                  res.block_offdiag <= 1e-11 && res.min_last_column >= -1e-12 && res.max_last_column_imag <= 1e-12;
  return {ok, metric};
}

Outcome check_trace_invariance(const ReductionResult& r, const RankOneInstance& inst) {
  const TracePair original(inst.a, inst.b);
  const TracePair reduced(r.L, r.M);
  const TGrid grid = TGrid::equispaced(-2.0, 2.0, 11);
  double worst = 0.0;
  for (double t : grid.points()) {
    worst = std::max(worst, relative_gap(trace_f(reduced, t), trace_f(original, t)));
  }
  return {worst <= 1e-9, worst};
}

Outcome check_gram(const RankOneInstance& inst, const TGrid& grid, double tol) {
  const ECReport rep = check_exponential_convexity(trace_function(TracePair(inst.a, inst.b)), grid, tol);
  return {rep.passed, rep.min_eigenvalue / rep.scale};
}

Outcome check_entrywise(const ReductionResult& r, double tol) {
  const EntrywiseECResult res = entrywise_ec_check(r.L, r.M, TGrid::equispaced(-2.0, 2.0, 6), tol);
  double worst = std::numeric_limits<double>::infinity();
  for (const ECReport& rep : res.reports) worst = std::min(worst, rep.min_eigenvalue / rep.scale);
  return {res.all_passed && res.max_imag <= 1e-10, worst};
}

Outcome check_lie(const RankOneInstance& inst) {
  std::vector<double> errors;
  for (int p = 8; p <= 1024; p *= 2) errors.push_back(*lie_product_approx(inst.a, inst.b, p, true).reference_error);
  const double floor = 1e-13 * tol_scale(matrix_exp_hermitian(inst.a + inst.b));
  double worst = 0.0;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    if (errors[k - 1] > floor) worst = std::max(worst, errors[k] / errors[k - 1]);
  }
  return {worst <= 0.75, worst};
}

Outcome check_commuting(const RankOneInstance& inst) {
  Rng rng(case_seed(inst.seed, 2));
  std::normal_distribution<double> normal(0.0, 1.0);
  const EigenDecomposition ed = eigh(inst.a);
  RealVector diag(inst.a.dim());
  for (Index j = 0; j < diag.size(); ++j) diag(j) = normal(rng);
  const ComplexMatrix& v = ed.eigenvectors.matrix();
  const HermitianMatrix b_comm = HermitianMatrix::symmetrized(v * diag.cast<Complex>().asDiagonal() * v.adjoint());

  const TracePair pair(inst.a, b_comm);
  const AtomicMeasure mu = commuting_measure(pair);
  double worst = relative_gap(mu.total_mass(), matrix_exp_hermitian(b_comm).trace().real());
  const TGrid grid = TGrid::equispaced(-2.0, 2.0, 11);
  for (double t : grid.points()) {
    const double f = trace_f(pair, t);
    worst = std::max(worst, std::abs(laplace_transform(mu, t) - f) / f);
  }
  return {worst <= 1e-10, worst};
}

Outcome check_growth(const RankOneInstance& inst) {
  const SupportEstimate est = growth_exponents(TracePair(inst.a, inst.b));
  const double worst = std::max(std::abs(est.lambda_min_est - est.lambda_min_true),
                                std::abs(est.lambda_max_est - est.lambda_max_true));
  return {worst <= 0.05, worst};
}

std::vector<CheckRecord> run_case(const VerifyOptions& opt, std::size_t index) {
  const std::uint64_t seed = case_seed(opt.seed, index);
  const RankOneInstance inst = random_rank_one_instance(seed, opt.max_n);

  std::vector<CheckRecord> out;
  std::optional<ReductionResult> reduction;
  std::string reduction_error;
  try {
    reduction = reduce(inst.a, inst.b);
  } catch (const Error& e) {
    reduction_error = e.what();
  }

  const auto run = [&](const std::string& name, const std::function<Outcome()>& body) {
    CheckRecord rec;
    rec.case_index = index;
    rec.seed = seed;
    rec.n = inst.a.dim();
    rec.check = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome o = body();
      rec.passed = o.passed;
      rec.worst_metric = o.metric;
    } catch (const std::exception& e) {
      rec.passed = false;
      rec.worst_metric = kNaN;
      rec.error = e.what();
    }
    if (opt.timings) {
      rec.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    out.push_back(std::move(rec));
  };
  const auto reduced = [&]() -> const ReductionResult& {
    if (!reduction) throw Error(ErrorKind::RankNotOne, "reduction failed: " + reduction_error);
    return *reduction;
  };

  run("reduction", [&] { return check_reduction(reduced(), inst); });
  run("trace_invariance", [&] { return check_trace_invariance(reduced(), inst); });
  run("ec_gram_equispaced", [&] { return check_gram(inst, TGrid::equispaced(-2.0, 2.0, 8), opt.psd_tol); });
  run("ec_gram_random",
      [&] { return check_gram(inst, TGrid::seeded_random(-2.0, 2.0, 8, case_seed(seed, 1)), opt.psd_tol); });
  run("entrywise_ec", [&] { return check_entrywise(reduced(), opt.psd_tol); });
  run("lie_convergence", [&] { return check_lie(inst); });
  run("commuting_round_trip", [&] { return check_commuting(inst); });
  run("growth_exponents", [&] { return check_growth(inst); });
  return out;
}

}  // namespace

const std::vector<std::string>& verification_checks() {
  static const std::vector<std::string> names{"reduction",    "trace_invariance", "ec_gram_equispaced",
                                              "ec_gram_random", "entrywise_ec",   "lie_convergence",
                                              "commuting_round_trip", "growth_exponents"};
  return names;
}

VerificationReport run_verification(const VerifyOptions& options) {
  if (options.cases < 1) throw Error(ErrorKind::InvalidArgument, "cases must be >= 1");
  if (options.max_n < 2 || options.max_n > 12) throw Error(ErrorKind::InvalidArgument, "max_n must lie in [2, 12]");

  std::vector<std::vector<CheckRecord>> per_case(options.cases);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < options.cases; i = next++) per_case[i] = run_case(options, i);
  };
  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, options.cases));
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
  }

  VerificationReport report;
  report.options = options;
  for (auto& records : per_case) {
    for (auto& r : records) {
      if (!r.passed) ++report.failures;
      report.records.push_back(std::move(r));
    }
  }
  return report;
}

Json report_to_json(const VerificationReport& report) {
  Json doc = Json::object();
  doc["tool"] = "expconvex verify";
  doc["ensemble_law"] = std::string(kEnsembleLaw);
  doc["parameters"] = {{"cases", report.options.cases},
                       {"max_n", report.options.max_n},
                       {"seed", report.options.seed},
                       {"psd_tol", report.options.psd_tol}};
  Json records = Json::array();
  for (const CheckRecord& r : report.records) {
    Json rec = {{"case", r.case_index}, {"seed", r.seed},     {"n", r.n},
                {"check", r.check},     {"passed", r.passed}, {"worst_metric", r.worst_metric}};
    if (!r.error.empty()) rec["error"] = r.error;
    if (r.elapsed_ms) rec["elapsed_ms"] = *r.elapsed_ms;
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  doc["summary"] = {{"cases", report.options.cases},
                    {"checks", report.records.size()},
                    {"failures", report.failures}};
  return doc;
}

}  // namespace expconvex
