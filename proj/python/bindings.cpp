#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expconvex/convexity.hpp"
#include "expconvex/reduction.hpp"
#include "expconvex/transform.hpp"
#include "expconvex/verify.hpp"

namespace py = pybind11;
using namespace expconvex;

namespace {

HermitianMatrix herm(const ComplexMatrix& m) { return validate_hermitian(m); }

TGrid grid_of(const std::vector<double>& points) { return TGrid::from_points(points); }

py::dict ec_dict(const ECReport& rep) {
  py::dict d;
  d["passed"] = rep.passed;
  d["min_eigenvalue"] = rep.min_eigenvalue;
  d["witness"] = ComplexVector(rep.witness);
  d["tolerance"] = rep.tolerance;
  d["scale"] = rep.scale;
  d["threshold"] = rep.threshold;
  return d;
}

std::vector<std::pair<double, double>> atoms_of(const AtomicMeasure& mu) {
  std::vector<std::pair<double, double>> out;
  for (const Atom& a : mu.atoms()) out.emplace_back(a.location, a.weight);
  return out;
}

AtomicMeasure measure_of(const std::vector<std::pair<double, double>>& atoms) {
  std::vector<Atom> v;
  for (const auto& [loc, w] : atoms) v.push_back(Atom{loc, w});
  return AtomicMeasure(std::move(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exponential convexity of tr exp(tA+B) for rank-one A";

  py::register_exception<Error>(m, "ExpconvexError");

  m.def("validate_hermitian",
        [](const ComplexMatrix& a, double tol) { return ComplexMatrix(validate_hermitian(a, tol).matrix()); },
        py::arg("m"), py::arg("tol") = kHermitianTol);

  m.def("eigh", [](const ComplexMatrix& a) {
    const EigenDecomposition ed = eigh(herm(a));
    return py::make_tuple(RealVector(ed.eigenvalues), ComplexMatrix(ed.eigenvectors.matrix()));
  });

  m.def("expm_hermitian", [](const ComplexMatrix& a) { return matrix_exp_hermitian(herm(a)); });

  m.def("lie_product",
        [](const ComplexMatrix& x, const ComplexMatrix& y, int p, bool reference) {
          const LieApproximation r = lie_product_approx(herm(x), herm(y), p, reference);
          py::dict d;
          d["p"] = r.p;
          d["value"] = r.value;
          d["reference_error"] = r.reference_error ? py::cast(*r.reference_error) : py::none();
          return d;
        },
        py::arg("x"), py::arg("y"), py::arg("p"), py::arg("reference") = false);

  m.def("perron_shift", [](const ComplexMatrix& a) {
    const PerronShift s = perron_shift(herm(a));
    return py::make_tuple(s.rho, s.shifted);
  });

  m.def("exp_entrywise_nonneg",
        [](const ComplexMatrix& a, double tol) {
          const EntrywiseNonnegReport r = exp_entrywise_nonneg_check(herm(a), tol);
          py::dict d;
          d["holds"] = r.holds;
          d["min_entry"] = r.min_entry;
          d["location"] = py::make_tuple(r.row, r.col);
          d["max_imag"] = r.max_imag;
          return d;
        },
        py::arg("m"), py::arg("tol") = kHermitianTol);

  m.def("reduce",
        [](const ComplexMatrix& a, const ComplexMatrix& b, std::optional<double> rank_tol) {
          const HermitianMatrix ha = herm(a);
          const HermitianMatrix hb = herm(b);
          const ReductionResult r = reduce(ha, hb, rank_tol);
          const ReductionResiduals res = reduction_residuals(r, ha, hb);
          py::dict trace;
          trace["U"] = r.trace.U.matrix();
          trace["B_block"] = r.trace.B_block.matrix();
          trace["b_col"] = r.trace.b_col;
          trace["mu_n"] = r.trace.mu_n;
          trace["V_block"] = r.trace.V_block.matrix();
          trace["M_block"] = r.trace.M_block;
          trace["g"] = r.trace.g;
          trace["omegas"] = r.trace.omegas;
          trace["Omega"] = r.trace.Omega.matrix();
          trace["W_block"] = r.trace.W_block.matrix();
          trace["g_abs"] = r.trace.g_abs;
          py::dict d;
          d["W"] = r.W.matrix();
          d["L"] = r.L.matrix();
          d["M"] = r.M.matrix();
          d["trace"] = trace;
          d["residuals"] = py::dict(py::arg("a") = res.a_residual, py::arg("b") = res.b_residual,
                                    py::arg("unitarity") = res.unitarity);
          return d;
        },
        py::arg("a"), py::arg("b"), py::arg("rank_tol") = py::none());

  m.def("trace_f", [](const ComplexMatrix& a, const ComplexMatrix& b, double t) {
    return trace_f(TracePair(herm(a), herm(b)), t);
  });

  m.def("check_exponential_convexity",
        [](const std::function<double(double)>& f, const std::vector<double>& grid, double tol) {
          return ec_dict(check_exponential_convexity(ScalarFunction("python", f), grid_of(grid), tol));
        },
        py::arg("f"), py::arg("grid"), py::arg("tol") = kDefaultPsdTol);

  m.def("check_trace_convexity",
        [](const ComplexMatrix& a, const ComplexMatrix& b, const std::vector<double>& grid, double tol) {
          const TracePair pair(herm(a), herm(b));
          return ec_dict(check_exponential_convexity(trace_function(pair), grid_of(grid), tol));
        },
        py::arg("a"), py::arg("b"), py::arg("grid"), py::arg("tol") = kDefaultPsdTol);

  m.def("psd_check",
        [](const Eigen::MatrixXd& g, double tol) {
          return ec_dict(psd_check(GramMatrix{g, TGrid::equispaced(0.0, 1.0, 1), "matrix"}, tol));
        },
        py::arg("g"), py::arg("tol") = kDefaultPsdTol);

  m.def("entrywise_ec_check",
        [](const ComplexMatrix& l, const ComplexMatrix& mm, const std::vector<double>& grid, double tol) {
          const EntrywiseECResult r = entrywise_ec_check(herm(l), herm(mm), grid_of(grid), tol);
          Eigen::MatrixXd mins(r.n, r.n);
          for (Index j = 0; j < r.n; ++j)
            for (Index k = 0; k < r.n; ++k) mins(j, k) = r.at(j, k).min_eigenvalue;
          py::dict d;
          d["all_passed"] = r.all_passed;
          d["max_imag"] = r.max_imag;
          d["min_eigenvalues"] = mins;
          return d;
        },
        py::arg("l"), py::arg("m"), py::arg("grid"), py::arg("tol") = kDefaultPsdTol);

  m.def("commuting_measure", [](const ComplexMatrix& a, const ComplexMatrix& b, double comm_tol) {
    return atoms_of(commuting_measure(TracePair(herm(a), herm(b)), comm_tol));
  }, py::arg("a"), py::arg("b"), py::arg("comm_tol") = kCommTol);

  m.def("laplace_transform", [](const std::vector<std::pair<double, double>>& atoms, double t) {
    return laplace_transform(measure_of(atoms), t);
  });

  m.def("growth_exponents",
        [](const ComplexMatrix& a, const ComplexMatrix& b, std::optional<double> t_far) {
          const SupportEstimate s = growth_exponents(TracePair(herm(a), herm(b)), t_far);
          py::dict d;
          d["lambda_min_est"] = s.lambda_min_est;
          d["lambda_max_est"] = s.lambda_max_est;
          d["lambda_min_true"] = s.lambda_min_true;
          d["lambda_max_true"] = s.lambda_max_true;
          d["t_far"] = s.t_far;
          return d;
        },
        py::arg("a"), py::arg("b"), py::arg("t_far") = py::none());

  m.def("fit_measure",
        [](const std::vector<double>& ts, const std::vector<double>& values, double lo, double hi, int resolution,
           double reg) {
          if (ts.size() != values.size()) throw Error(ErrorKind::DimensionMismatch, "ts and values differ in length");
          std::vector<Sample> samples;
          for (std::size_t k = 0; k < ts.size(); ++k) samples.push_back(Sample{ts[k], values[k]});
          const MeasureFit fit = fit_measure(samples, lo, hi, resolution, reg);
          py::dict d;
          d["atoms"] = atoms_of(fit.measure);
          d["training_residual"] = fit.training_residual;
          d["holdout_error"] = fit.holdout_error;
          d["cell_width"] = fit.cell_width;
          return d;
        },
        py::arg("ts"), py::arg("values"), py::arg("lo"), py::arg("hi"), py::arg("resolution") = 41,
        py::arg("reg") = kDefaultFitReg);

  m.def("verify_report_json",
        [](std::size_t cases, Index max_n, std::uint64_t seed) {
          VerifyOptions opt;
          opt.cases = cases;
          opt.max_n = max_n;
          opt.seed = seed;
          VerificationReport report;
          {
            py::gil_scoped_release release;
            report = run_verification(opt);
          }
          return report_to_json(report).dump(2);
        },
        py::arg("cases"), py::arg("max_n") = 7, py::arg("seed") = 0);
}
