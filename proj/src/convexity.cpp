#include "expconvex/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace expconvex {

namespace {

std::string format_number(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

double evaluate(const ScalarFunction& f, double t) {
  double value = 0.0;
  try {
    value = f(t);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::EvaluationFailure, f.label() + " at t=" + format_number(t) + ": " + e.what());
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::EvaluationFailure, f.label() + " is not finite at t=" + format_number(t));
  }
  return value;
}

}  // namespace

ScalarFunction ScalarFunction::exponential(double mu) {
  return ScalarFunction("exp(" + format_number(mu) + "t)", [mu](double t) { return std::exp(mu * t); });
}

ScalarFunction ScalarFunction::constant(double c) {
  return ScalarFunction("const(" + format_number(c) + ")", [c](double) { return c; });
}

TGrid TGrid::from_points(std::vector<double> points) {
  if (points.empty()) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw Error(ErrorKind::NonFinite, "grid point is not finite");
    if (i > 0 && !(points[i - 1] < points[i])) {
      throw Error(ErrorKind::InvalidArgument, "grid points must be strictly increasing");
    }
  }
  return TGrid(std::move(points));
}

TGrid TGrid::equispaced(double lo, double hi, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "grid needs at least one point");
  if (n == 1) return from_points({lo});
  std::vector<double> pts(n);
  const double h = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) pts[i] = lo + h * static_cast<double>(i);
  pts.back() = hi;
  return from_points(std::move(pts));
}

TGrid TGrid::seeded_random(double lo, double hi, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    pts.push_back(dist(rng));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  return from_points(std::move(pts));
}

GramMatrix gram(const ScalarFunction& f, const TGrid& grid) {
  const auto n = static_cast<Index>(grid.size());
  Eigen::MatrixXd g(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index s = r; s < n; ++s) {
      const double v = evaluate(f, grid[static_cast<std::size_t>(r)] + grid[static_cast<std::size_t>(s)]);
      g(r, s) = v;
      g(s, r) = v;
    }
  }
  return GramMatrix{std::move(g), grid, f.label()};
}

double quadratic_form(const Eigen::MatrixXd& g, const ComplexVector& xi) {
  return (xi.adjoint() * g.cast<Complex>() * xi)(0, 0).real();
}

ECReport psd_check(const GramMatrix& g, double tol) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.entries);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Gram eigensolver did not converge for " + g.label);
  }
  ECReport rep;
  rep.tolerance = tol;
  rep.scale = std::max(1.0, g.entries.cwiseAbs().maxCoeff());
  rep.threshold = tol * rep.scale;
  rep.min_eigenvalue = solver.eigenvalues()(0);
  rep.witness = solver.eigenvectors().col(0).cast<Complex>();
  rep.passed = rep.min_eigenvalue >= -rep.threshold;
  return rep;
}

ECReport check_exponential_convexity(const ScalarFunction& f, const TGrid& grid, double tol) {
  return psd_check(gram(f, grid), tol);
}

MidpointResult midpoint_inequality_check(const ScalarFunction& f, double t1, double t2) {
  MidpointResult out;
  out.lhs = evaluate(f, t1 + t2);
  out.rhs = std::sqrt(evaluate(f, 2.0 * t1) * evaluate(f, 2.0 * t2));
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

DichotomyResult dichotomy_check(const ScalarFunction& f, const TGrid& grid) {
  bool any_nonzero = false;
  bool all_positive = true;
  for (double t : grid.points()) {
    const double v = evaluate(f, t);
    if (std::abs(v) > kZeroFunctionTol) any_nonzero = true;
    if (!(v > 0.0)) all_positive = false;
  }
  if (!any_nonzero) return DichotomyResult{true, false};
  if (all_positive) return DichotomyResult{false, true};
  throw Error(ErrorKind::DichotomyViolated,
              f.label() + " is neither identically zero nor strictly positive on the grid");
}

ScalarFunction ec_scale(const ScalarFunction& f, double c) {
  if (!(c >= 0.0)) throw Error(ErrorKind::NegativeScale, "scale factor " + format_number(c) + " is negative");
  return ScalarFunction("scale(" + format_number(c) + "," + f.label() + ")", [f, c](double t) { return c * f(t); });
}

ScalarFunction ec_sum(const ScalarFunction& f1, const ScalarFunction& f2) {
  return ScalarFunction("sum(" + f1.label() + "," + f2.label() + ")",
                        [f1, f2](double t) { return f1(t) + f2(t); });
}

ScalarFunction ec_product(const ScalarFunction& f1, const ScalarFunction& f2) {
  return ScalarFunction("product(" + f1.label() + "," + f2.label() + ")",
                        [f1, f2](double t) { return f1(t) * f2(t); });
}

ScalarFunction lie_trace_function(const HermitianMatrix& l, const HermitianMatrix& m, int p) {
  if (l.dim() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "L and M differ in size");
  return ScalarFunction("lie_trace(p=" + std::to_string(p) + ")", [l, m, p](double t) {
    return lie_product_approx(l.scaled(t), m, p).value.trace().real();
  });
}

EntrywiseECResult entrywise_ec_check(const HermitianMatrix& l, const HermitianMatrix& m, const TGrid& grid,
                                     double tol) {
  if (l.dim() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "L and M differ in size");
  if (!l.is_diagonal(kHermitianTol * tol_scale(l.matrix()))) {
    throw Error(ErrorKind::HypothesisViolated, "L is not diagonal");
  }
  if (!off_diagonal_nonnegative(m)) {
    throw Error(ErrorKind::HypothesisViolated, "M has an off-diagonal entry that is not real nonnegative");
  }
  // Drop round-off off the diagonal of L so e^{Lt} stays exactly diagonal.
  std::vector<double> l_diag(static_cast<std::size_t>(l.dim()));
  for (Index j = 0; j < l.dim(); ++j) l_diag[static_cast<std::size_t>(j)] = l(j, j).real();
  const HermitianMatrix l_clean = HermitianMatrix::diagonal(l_diag);

  const auto exp_at = [l_clean, m](double t) { return matrix_exp_hermitian(l_clean.scaled(t) + m); };

  EntrywiseECResult out;
  out.n = l.dim();
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t s = r; s < grid.size(); ++s) {
      const ComplexMatrix e = exp_at(grid[r] + grid[s]);
      out.max_imag = std::max(out.max_imag, e.imag().cwiseAbs().maxCoeff());
    }
  }

  out.all_passed = true;
  out.reports.reserve(static_cast<std::size_t>(out.n * out.n));
  for (Index j = 0; j < out.n; ++j) {
    for (Index k = 0; k < out.n; ++k) {
      const ScalarFunction entry("exp(Lt+M)[" + std::to_string(j) + "," + std::to_string(k) + "]",
                                 [exp_at, j, k](double t) { return exp_at(t)(j, k).real(); });
      ECReport rep = check_exponential_convexity(entry, grid, tol);
      out.all_passed = out.all_passed && rep.passed;
      out.reports.push_back(std::move(rep));
    }
  }
  if (out.max_imag > tol) out.all_passed = false;
  return out;
}

}  // namespace expconvex
