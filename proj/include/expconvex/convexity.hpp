#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "expconvex/hermitian.hpp"

namespace expconvex {

inline constexpr double kDefaultPsdTol = 1e-8;
inline constexpr double kZeroFunctionTol = 1e-14;

/// A real function of one real variable with a label for reports.
/// Evaluation must be safe to call concurrently.
class ScalarFunction {
 public:
  using Fn = std::function<double(double)>;

  ScalarFunction(std::string label, Fn fn) : label_(std::move(label)), fn_(std::move(fn)) {}

  static ScalarFunction exponential(double mu);  // t ↦ e^{μt}
  static ScalarFunction constant(double c);

  double operator()(double t) const { return fn_(t); }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }

 private:
  std::string label_;
  Fn fn_;
};

/// Strictly increasing finite sample points t_1 < ... < t_N.
class TGrid {
 public:
  static TGrid from_points(std::vector<double> points);
  static TGrid equispaced(double lo, double hi, std::size_t n);
  /// n sorted uniform draws on [lo, hi] from a seeded generator.
  static TGrid seeded_random(double lo, double hi, std::size_t n, std::uint64_t seed);

  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return points_[i]; }
  [[nodiscard]] const std::vector<double>& points() const noexcept { return points_; }

 private:
  explicit TGrid(std::vector<double> points) : points_(std::move(points)) {}
  std::vector<double> points_;
};

struct GramMatrix {
  Eigen::MatrixXd entries;  // entries(r, s) = f(t_r + t_s), exactly symmetric
  TGrid grid;
  std::string label;
};

struct ECReport {
  bool passed = false;
  double min_eigenvalue = 0.0;
  ComplexVector witness;  // unit eigenvector of the minimal eigenvalue
  double tolerance = 0.0;  // relative tolerance requested
  double scale = 1.0;      // max(1, ‖G‖_max)
  double threshold = 0.0;  // tolerance · scale
};

struct MidpointResult {
  bool holds = false;
  double lhs = 0.0;  // f(t1 + t2)
  double rhs = 0.0;  // sqrt(f(2 t1) f(2 t2))
};

struct DichotomyResult {
  bool all_zero = false;
  bool all_positive = false;
};

struct EntrywiseECResult {
  Index n = 0;
  std::vector<ECReport> reports;  // row-major n×n
  double max_imag = 0.0;          // largest |Im (e^{Lt+M})_{jk}| seen on the grid sums
  bool all_passed = false;

  [[nodiscard]] const ECReport& at(Index r, Index c) const {
    return reports[static_cast<std::size_t>(r * n + c)];
  }
};

GramMatrix gram(const ScalarFunction& f, const TGrid& grid);

/// Passes iff the smallest eigenvalue is ≥ −tol·max(1, ‖G‖_max).
ECReport psd_check(const GramMatrix& g, double tol = kDefaultPsdTol);

ECReport check_exponential_convexity(const ScalarFunction& f, const TGrid& grid, double tol = kDefaultPsdTol);

/// Σ G_rs ξ_r conj(ξ_s).
double quadratic_form(const Eigen::MatrixXd& g, const ComplexVector& xi);

/// f(t1+t2) ≤ sqrt(f(2t1) f(2t2)), up to a 1e-12 relative slack.
MidpointResult midpoint_inequality_check(const ScalarFunction& f, double t1, double t2);

/// On the grid f is either identically zero (|f| ≤ 1e-14) or strictly
/// positive; anything else throws DichotomyViolated.
DichotomyResult dichotomy_check(const ScalarFunction& f, const TGrid& grid);

ScalarFunction ec_scale(const ScalarFunction& f, double c);
ScalarFunction ec_sum(const ScalarFunction& f1, const ScalarFunction& f2);
ScalarFunction ec_product(const ScalarFunction& f1, const ScalarFunction& f2);

/// t ↦ tr[(e^{Lt/p} e^{M/p})^p].
ScalarFunction lie_trace_function(const HermitianMatrix& l, const HermitianMatrix& m, int p);

/// Runs the Gram PSD test on t ↦ Re (e^{Lt+M})_{jk} for every entry. Requires
/// l diagonal and the off-diagonal entries of m real nonnegative.
EntrywiseECResult entrywise_ec_check(const HermitianMatrix& l, const HermitianMatrix& m, const TGrid& grid,
                                     double tol = kDefaultPsdTol);

}  // namespace expconvex
