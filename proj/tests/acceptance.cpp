// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "expconvex/convexity.hpp"
#include "expconvex/ensemble.hpp"
#include "expconvex/reduction.hpp"
#include "expconvex/transform.hpp"

using namespace expconvex;

namespace {

constexpr std::uint64_t kMasterSeed = 20240601;
constexpr std::size_t kReductionCases = 200;

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Running maximum with a formatted summary.
struct Worst {
  double value = 0.0;
  void update(double v) {
    if (!(v <= value)) value = v;  // NaN sticks
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<RankOneInstance> reduction_instances() {
  std::vector<RankOneInstance> out;
  for (std::size_t i = 0; i < kReductionCases; ++i) out.push_back(random_rank_one_instance(case_seed(kMasterSeed, i), 7));
  return out;
}

Outcome reduction_suite(const std::vector<RankOneInstance>& instances) {
  const auto start = std::chrono::steady_clock::now();
  Worst a_res, b_res, neg_offdiag, trace_dev;
  for (const RankOneInstance& inst : instances) {
    const ReductionResult r = reduce(inst.a, inst.b);
    const ReductionResiduals res = reduction_residuals(r, inst.a, inst.b);
    a_res.update(res.a_residual);
    b_res.update(res.b_residual);
    const ComplexMatrix& m = r.M.matrix();
    for (Index j = 0; j < m.rows(); ++j)
      for (Index k = 0; k < m.cols(); ++k)
        if (j != k) neg_offdiag.update(std::max(-m(j, k).real(), std::abs(m(j, k).imag())));
    const TracePair before(inst.a, inst.b);
    const TracePair after(r.L, r.M);
    for (int k = 0; k <= 10; ++k) {
      const double t = -2.0 + 0.4 * k;
      const double f = trace_f(before, t);
      trace_dev.update(std::abs(f - trace_f(after, t)) / std::max(1.0, f));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.passed = a_res.value <= 1e-10 && b_res.value <= 1e-10 && neg_offdiag.value <= 1e-12 &&
             trace_dev.value <= 1e-9 && secs < 30.0;
  o.detail = "max |WAW*-L| " + fmt(a_res.value) + ", max |WBW*-M| " + fmt(b_res.value) +
             ", worst off-diagonal deficit " + fmt(neg_offdiag.value) + ", trace deviation " + fmt(trace_dev.value) +
             ", " + fmt(secs) + " s";
  return o;
}

Outcome convexity_suite(const std::vector<RankOneInstance>& instances) {
  double worst = INFINITY;  // min over all Gram matrices of λ_min / scale
  std::size_t failures = 0;
  for (const RankOneInstance& inst : instances) {
    const ScalarFunction f = trace_function(TracePair(inst.a, inst.b));
    for (const TGrid& grid : {TGrid::equispaced(-2.0, 2.0, 8), TGrid::seeded_random(-2.0, 2.0, 8, inst.seed)}) {
      const ECReport r = check_exponential_convexity(f, grid, 1e-8);
      if (!r.passed) ++failures;
      worst = std::min(worst, r.min_eigenvalue / r.scale);
    }
  }
  return {failures == 0, std::to_string(2 * instances.size()) + " Gram matrices, " + std::to_string(failures) +
                             " failures, worst min eigenvalue / scale " + fmt(worst)};
}

Outcome lie_suite() {
  Worst ratio;
  for (std::size_t i = 0; i < 20; ++i) {
    const RankOneInstance inst = random_rank_one_instance(case_seed(kMasterSeed + 1, i), 7);
    double previous = *lie_product_approx(inst.a, inst.b, 8, true).reference_error;
    for (int p = 16; p <= 1024; p *= 2) {
      const double err = *lie_product_approx(inst.a, inst.b, p, true).reference_error;
      ratio.update(err / previous);
      previous = err;
    }
  }
  return {ratio.value <= 0.75, "20 instances, worst error(2k)/error(k) " + fmt(ratio.value)};
}

Outcome nonneg_exp_suite() {
  Rng rng(case_seed(kMasterSeed, 2));
  double min_entry = INFINITY;
  Worst shift_dev;
  for (int i = 0; i < 100; ++i) {
    const HermitianMatrix m = random_nonneg_offdiag(rng, 1 + i % 7);
    const ComplexMatrix e = matrix_exp_hermitian(m);
    min_entry = std::min(min_entry, e.real().minCoeff());
    const PerronShift s = perron_shift(m);
    const ComplexMatrix shifted = std::exp(-s.rho) * matrix_exp_hermitian(HermitianMatrix::symmetrized(s.shifted));
    shift_dev.update(max_abs(e - shifted) / max_abs(e));
  }
  return {min_entry >= -1e-12 && shift_dev.value <= 1e-10,
          "100 matrices, min entry of e^M " + fmt(min_entry) + ", shift identity deviation " + fmt(shift_dev.value)};
}

Outcome entrywise_kernel_suite() {
  Rng rng(case_seed(kMasterSeed, 3));
  std::uniform_real_distribution<double> diag(-1.0, 1.0);
  std::size_t failures = 0;
  Worst imag;
  for (int i = 0; i < 50; ++i) {
    const Index n = 2 + i % 6;
    std::vector<double> ld(static_cast<std::size_t>(n));
    for (double& v : ld) v = diag(rng);
    const HermitianMatrix m = random_nonneg_offdiag(rng, n);
    const EntrywiseECResult r = entrywise_ec_check(HermitianMatrix::diagonal(ld), m, TGrid::equispaced(-2.0, 2.0, 6));
    for (const ECReport& rep : r.reports)
      if (!rep.passed) ++failures;
    imag.update(r.max_imag);
  }
  return {failures == 0 && imag.value <= 1e-10,
          "50 pairs, " + std::to_string(failures) + " failing entries, max imaginary part " + fmt(imag.value)};
}

Outcome commuting_suite() {
  Rng rng(case_seed(kMasterSeed, 4));
  std::normal_distribution<double> normal;
  Worst transform_dev, mass_dev;
  for (int i = 0; i < 50; ++i) {
    const Index n = 2 + i % 6;
    const UnitaryMatrix v = random_unitary(rng, n);
    RealVector da(n), db(n);
    for (Index j = 0; j < n; ++j) {
      da(j) = std::round(2.0 * normal(rng)) / 2.0;
      db(j) = normal(rng);
    }
    const ComplexMatrix a = v.matrix() * da.cast<Complex>().asDiagonal() * v.matrix().adjoint();
    const ComplexMatrix b = v.matrix() * db.cast<Complex>().asDiagonal() * v.matrix().adjoint();
    const TracePair pair(HermitianMatrix::symmetrized(a), HermitianMatrix::symmetrized(b));
    const AtomicMeasure measure = commuting_measure(pair);
    for (int k = 0; k <= 10; ++k) {
      const double t = -2.0 + 0.4 * k;
      const double f = trace_f(pair, t);
      transform_dev.update(std::abs(laplace_transform(measure, t) - f) / f);
    }
    const double tr_exp_b = matrix_exp_hermitian(pair.B()).trace().real();
    mass_dev.update(std::abs(measure.total_mass() - tr_exp_b) / tr_exp_b);
  }
  return {transform_dev.value <= 1e-10 && mass_dev.value <= 1e-10,
          "50 pairs, transform deviation " + fmt(transform_dev.value) + ", mass deviation " + fmt(mass_dev.value)};
}

Outcome fit_suite() {
  Worst holdout, support_miss;
  double min_weight = INFINITY;
  std::size_t used = 0;
  for (std::uint64_t i = 0; used < 20; ++i) {
    const RankOneInstance inst = random_rank_one_instance(case_seed(kMasterSeed + 5, i), 4);
    const ComplexMatrix comm = inst.a.matrix() * inst.b.matrix() - inst.b.matrix() * inst.a.matrix();
    if (max_abs(comm) < 1e-6) continue;
    ++used;
    const TracePair pair(inst.a, inst.b);
    const SupportEstimate est = growth_exponents(pair);
    const auto samples = sample_trace_f(pair, TGrid::equispaced(-2.0, 2.0, 21));
    const MeasureFit fit = fit_measure(samples, est.lambda_min_est, est.lambda_max_est, 41);
    holdout.update(fit.holdout_error);
    for (const Atom& at : fit.measure.atoms()) min_weight = std::min(min_weight, at.weight);
    support_miss.update(std::abs(fit.support_lo - est.lambda_min_true) / fit.cell_width);
    support_miss.update(std::abs(fit.support_hi - est.lambda_max_true) / fit.cell_width);
  }
  return {holdout.value <= 1e-3 && min_weight >= 0.0 && support_miss.value <= 1.0,
          "20 instances, worst holdout error " + fmt(holdout.value) + ", min weight " + fmt(min_weight) +
              ", support offset " + fmt(support_miss.value) + " cells"};
}

Outcome negative_controls() {
  const ScalarFunction gaussian("exp(-t^2)", [](double t) { return std::exp(-t * t); });
  const TGrid grid = TGrid::from_points({-1.0, 0.0, 1.0});
  const ECReport r = check_exponential_convexity(gaussian, grid);
  const double q = quadratic_form(gram(gaussian, grid).entries, r.witness);

  bool dichotomy_thrown = false;
  try {
    dichotomy_check(ScalarFunction("max(t,0)", [](double t) { return std::max(t, 0.0); }),
                    TGrid::equispaced(-2.0, 2.0, 5));
  } catch (const Error& e) {
    dichotomy_thrown = e.kind() == ErrorKind::DichotomyViolated;
  }
  return {!r.passed && q < 0.0 && dichotomy_thrown,
          std::string("exp(-t^2) ") + (r.passed ? "passed" : "failed") + " with witness form " + fmt(q) +
              ", max(t,0) " + (dichotomy_thrown ? "raised DichotomyViolated" : "did not raise")};
}

Outcome closure_suite() {
  const TGrid grid = TGrid::equispaced(-2.0, 2.0, 8);
  Rng rng(case_seed(kMasterSeed, 9));
  std::uniform_real_distribution<double> coef(0.0, 3.0);
  std::size_t failures = 0;
  std::size_t checks = 0;
  const auto expect_pass = [&](const ScalarFunction& f) {
    ++checks;
    if (!check_exponential_convexity(f, grid).passed) ++failures;
  };
  for (std::uint64_t i = 0; i < 10; ++i) {
    const RankOneInstance a = random_rank_one_instance(case_seed(kMasterSeed + 9, 2 * i), 5);
    const RankOneInstance b = random_rank_one_instance(case_seed(kMasterSeed + 9, 2 * i + 1), 5);
    const ScalarFunction fa = trace_function(TracePair(a.a, a.b));
    const ScalarFunction fb = trace_function(TracePair(b.a, b.b));
    expect_pass(ec_sum(fa, fb));
    expect_pass(ec_scale(fa, coef(rng)));
    expect_pass(ec_scale(fa, 0.0));
    expect_pass(ec_product(fa, fb));
  }

  // Lie-product trace sequence on reduced pairs.
  bool converging = true;
  Worst final_gap;
  for (std::uint64_t i = 0; i < 5; ++i) {
    const RankOneInstance inst = random_rank_one_instance(case_seed(kMasterSeed + 10, i), 5);
    const ReductionResult r = reduce(inst.a, inst.b);
    const ScalarFunction limit = trace_function(TracePair(r.L, r.M));
    expect_pass(limit);
    double previous = INFINITY;
    double scale = 0.0;
    for (double t : grid.points()) scale = std::max(scale, limit(t));
    for (int p = 1; p <= 1024; p *= 2) {
      const ScalarFunction fp = lie_trace_function(r.L, r.M, p);
      expect_pass(fp);
      double gap = 0.0;
      for (double t : grid.points()) gap = std::max(gap, std::abs(fp(t) - limit(t)));
      if (p >= 8 && gap > previous) converging = false;
      previous = gap;
    }
    final_gap.update(previous / scale);
  }
  return {failures == 0 && converging && final_gap.value <= 1e-2,
          std::to_string(checks) + " closure checks, " + std::to_string(failures) +
              " failures, Lie sequence gap at p=1024 " + fmt(final_gap.value) + " relative"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "expconvex_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cli = EXPCONVEX_CLI_PATH;
  int codes[2];
  for (int run = 0; run < 2; ++run) {
    const std::string cmd = "\"" + cli + "\" verify --cases 50 --seed 7 --out \"" +
                            (dir / ("run" + std::to_string(run) + ".json")).string() + "\" 2>/dev/null";
    codes[run] = std::system(cmd.c_str());
  }
  const std::string first = slurp(dir / "run0.json");
  const std::string second = slurp(dir / "run1.json");
  std::filesystem::remove_all(dir);
  const bool same = !first.empty() && first == second;
  return {same && codes[0] == 0 && codes[1] == 0,
          std::string(same ? "identical" : "different") + " reports (" + std::to_string(first.size()) +
              " bytes), exit statuses " + std::to_string(codes[0]) + ", " + std::to_string(codes[1])};
}

}  // namespace

int main() {
  const std::vector<RankOneInstance> instances = reduction_instances();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"reduction suite", [&] { return reduction_suite(instances); }},
      {"exponential convexity of rank-one trace functions", [&] { return convexity_suite(instances); }},
      {"Lie product convergence", lie_suite},
      {"entrywise nonnegativity and Perron shift", nonneg_exp_suite},
      {"entrywise convexity of exp(Lt+M)", entrywise_kernel_suite},
      {"commuting representation round trip", commuting_suite},
      {"measure fit", fit_suite},
      {"negative controls", negative_controls},
      {"closure under sums, scalings, products and limits", closure_suite},
      {"verify determinism", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << "\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
