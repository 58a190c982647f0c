#include "expconvex/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "expconvex/matrix_io.hpp"
#include "expconvex/reduction.hpp"
#include "expconvex/verify.hpp"

namespace expconvex {

namespace {

std::string dump(const Json& doc) { return pretty_json(doc); }

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::RankNotOne: return kExitRank;
    case ErrorKind::IllConditioned: return kExitIllConditioned;
    default: return kExitUsage;
  }
}

int report_error(const Error& e, std::ostream& err) {
  err << "expconvex: " << e.what() << "\n";
  return exit_for(e);
}

Json ec_report_to_json(const ECReport& rep) {
  Json out = {{"passed", rep.passed},
              {"min_eigenvalue", rep.min_eigenvalue},
              {"scale", rep.scale},
              {"tolerance", rep.tolerance},
              {"threshold", rep.threshold}};
  if (!rep.passed) out["witness"] = vector_to_json(rep.witness);
  return out;
}

}  // namespace

double psd_tolerance_from_env() {
  const char* raw = std::getenv("EXPCONVEX_TOL");
  if (raw == nullptr || *raw == '\0') return kDefaultPsdTol;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !std::isfinite(v) || v < 0.0) return kDefaultPsdTol;
  return v;
}

int cmd_reduce(const ReduceOptions& opt, std::ostream& err) {
  try {
    const auto [a, b] = read_hermitian_pair(opt.input);
    const ReductionResult r = reduce(a, b, opt.rank_tol);
    const ReductionResiduals res = reduction_residuals(r, a, b);
    const ReductionTrace& tr = r.trace;

    Json doc = Json::object();
    doc["n"] = a.dim();
    doc["lambda_n"] = r.L(a.dim() - 1, a.dim() - 1).real();
    doc["W"] = matrix_to_json(r.W.matrix());
    doc["L"] = matrix_to_json(r.L.matrix());
    doc["M"] = matrix_to_json(r.M.matrix());
    doc["trace"] = {{"U", matrix_to_json(tr.U.matrix())},
                    {"B_block", matrix_to_json(tr.B_block.matrix())},
                    {"b_col", vector_to_json(tr.b_col)},
                    {"mu_n", tr.mu_n},
                    {"V_block", matrix_to_json(tr.V_block.matrix())},
                    {"M_block", real_vector_to_json(tr.M_block)},
                    {"g", vector_to_json(tr.g)},
                    {"omegas", vector_to_json(tr.omegas)},
                    {"Omega", matrix_to_json(tr.Omega.matrix())},
                    {"W_block", matrix_to_json(tr.W_block.matrix())},
                    {"g_abs", real_vector_to_json(tr.g_abs)}};
    doc["residuals"] = {{"WAW*-L", res.a_residual},
                        {"WBW*-M", res.b_residual},
                        {"WW*-I", res.unitarity},
                        {"max_block_offdiag", res.block_offdiag},
                        {"min_last_column", res.min_last_column}};
    write_text(opt.output, dump(doc));
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_check_ec(const CheckEcOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.grid_n < 1) {
    err << "expconvex: usage: --grid-n must be >= 1\n";
    return kExitUsage;
  }
  if (!(opt.grid_lo < opt.grid_hi) && opt.grid_n > 1) {
    err << "expconvex: usage: --grid-lo must be below --grid-hi\n";
    return kExitUsage;
  }
  const double tol = opt.tol.value_or(psd_tolerance_from_env());
  if (!(tol >= 0.0)) {
    err << "expconvex: usage: --tol must be >= 0\n";
    return kExitUsage;
  }
  try {
    const auto [a, b] = read_hermitian_pair(opt.input);
    const TracePair pair(a, b);
    const ScalarFunction f = trace_function(pair);
    const TGrid grid = TGrid::equispaced(opt.grid_lo, opt.grid_hi, static_cast<std::size_t>(opt.grid_n));
    const ECReport rep = check_exponential_convexity(f, grid, tol);

    Json doc = Json::object();
    doc["function"] = f.label();
    doc["grid"] = grid.points();
    doc["report"] = ec_report_to_json(rep);
    doc["all_positive"] = dichotomy_check(f, grid).all_positive;
    out << dump(doc);
    return rep.passed ? kExitOk : kExitCheckFailed;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_fit_measure(const FitMeasureOptions& opt, std::ostream& err) {
  if (opt.resolution < 1 || opt.t_points < 1 || !(opt.reg >= 0.0) || !(opt.t_lo < opt.t_hi)) {
    err << "expconvex: usage: need --resolution >= 1, --t-points >= 1, --reg >= 0 and t-lo < t-hi\n";
    return kExitUsage;
  }
  try {
    const auto [a, b] = read_hermitian_pair(opt.input);
    const TracePair pair(a, b);
    const SupportEstimate est = growth_exponents(pair);
    double lo = est.lambda_min_est;
    double hi = est.lambda_max_est;
    // A multiple of the identity gives a single exponent; open a window
    // around it so the candidate grid is well defined.
    if (hi - lo < kAtomMergeTol) {
      lo -= 0.5;
      hi += 0.5;
    }
    const auto samples =
        sample_trace_f(pair, TGrid::equispaced(opt.t_lo, opt.t_hi, static_cast<std::size_t>(opt.t_points)));
    const MeasureFit fit = fit_measure(samples, lo, hi, static_cast<int>(opt.resolution), opt.reg);
    const bool passed = fit.holdout_error <= opt.holdout_tol;

    Json atoms = Json::array();
    for (const Atom& at : fit.measure.atoms()) atoms.push_back({at.location, at.weight});
    Json doc = Json::object();
    doc["support_estimate"] = {{"lambda_min_est", est.lambda_min_est},
                               {"lambda_max_est", est.lambda_max_est},
                               {"lambda_min_true", est.lambda_min_true},
                               {"lambda_max_true", est.lambda_max_true},
                               {"t_far", est.t_far}};
    doc["support"] = {fit.support_lo, fit.support_hi};
    doc["grid_resolution"] = fit.grid_resolution;
    doc["cell_width"] = fit.cell_width;
    doc["reg"] = opt.reg;
    doc["atoms"] = std::move(atoms);
    doc["total_mass"] = fit.measure.total_mass();
    doc["training_residual"] = fit.training_residual;
    doc["holdout_error"] = fit.holdout_error;
    doc["training_samples"] = fit.training_count;
    doc["holdout_samples"] = fit.holdout_count;
    doc["passed"] = passed;
    write_text(opt.output, dump(doc));
    return passed ? kExitOk : kExitCheckFailed;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_verify(const VerifyCommandOptions& opt, std::ostream& err) {
  if (opt.cases < 1) {
    err << "expconvex: usage: --cases must be >= 1\n";
    return kExitUsage;
  }
  if (opt.max_n < 2 || opt.max_n > 12) {
    err << "expconvex: usage: --max-n must lie in [2, 12]\n";
    return kExitUsage;
  }
  VerifyOptions vo;
  vo.cases = static_cast<std::size_t>(opt.cases);
  vo.max_n = static_cast<Index>(opt.max_n);
  vo.seed = opt.seed;
  vo.psd_tol = opt.tol.value_or(psd_tolerance_from_env());
  vo.threads = opt.threads;
  vo.timings = opt.timings;
  try {
    const VerificationReport report = run_verification(vo);
    write_text(opt.output, dump(report_to_json(report)));
    err << "expconvex verify: " << report.records.size() << " checks over " << vo.cases << " cases, "
        << report.failures << " failures\n";
    return report.failures == 0 ? kExitOk : kExitCheckFailed;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

}  // namespace expconvex
