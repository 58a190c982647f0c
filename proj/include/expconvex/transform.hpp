#pragma once

#include <optional>
#include <span>
#include <vector>

#include "expconvex/convexity.hpp"
#include "expconvex/hermitian.hpp"

namespace expconvex {

inline constexpr double kCommTol = 1e-10;
inline constexpr double kAtomMergeTol = 1e-9;
inline constexpr double kDefaultFitReg = 1e-10;

/// The pair (A, B) defining t ↦ tr e^{tA+B}.
class TracePair {
 public:
  TracePair(HermitianMatrix a, HermitianMatrix b);

  [[nodiscard]] const HermitianMatrix& A() const noexcept { return a_; }
  [[nodiscard]] const HermitianMatrix& B() const noexcept { return b_; }
  [[nodiscard]] Index dim() const noexcept { return a_.dim(); }

 private:
  HermitianMatrix a_;
  HermitianMatrix b_;
};

struct Sample {
  double t = 0.0;
  double value = 0.0;
};

struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// Finite nonnegative combination of point masses. Locations are sorted and
/// atoms closer than kAtomMergeTol are merged by adding weights.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<Atom> atoms);

  [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] bool empty() const noexcept { return atoms_.empty(); }
  [[nodiscard]] double total_mass() const;

 private:
  std::vector<Atom> atoms_;
};

struct SupportEstimate {
  double lambda_min_est = 0.0;
  double lambda_max_est = 0.0;
  double lambda_min_true = 0.0;
  double lambda_max_true = 0.0;
  double t_far = 0.0;
};

struct MeasureFit {
  AtomicMeasure measure;
  int grid_resolution = 0;
  double support_lo = 0.0;
  double support_hi = 0.0;
  double cell_width = 0.0;         // spacing of candidate locations
  double training_residual = 0.0;  // ‖E w − f‖₂ / ‖f‖₂ on training samples
  double holdout_error = 0.0;      // max relative error on withheld samples
  std::size_t training_count = 0;
  std::size_t holdout_count = 0;
};

/// tr e^{tA+B} = Σ_j e^{ν_j(t)} over the eigenvalues of tA + B.
double trace_f(const TracePair& pair, double t);

/// log tr e^{tA+B}, evaluated without overflow.
double log_trace_f(const TracePair& pair, double t);

ScalarFunction trace_function(const TracePair& pair);

std::vector<Sample> sample_trace_f(const TracePair& pair, const TGrid& grid);

/// Σ_j w_j e^{t λ_j}.
double laplace_transform(const AtomicMeasure& measure, double t);

/// For commuting A, B: atoms at the eigenvalues of A weighted by tr e^{B}
/// restricted to each eigenspace.
AtomicMeasure commuting_measure(const TracePair& pair, double comm_tol = kCommTol);

/// Default far point 40/‖A‖_max (40 when A = 0).
double default_t_far(const TracePair& pair);

/// Two-point log-slope estimates of the extreme exponents of f at ±t_far,
/// next to the true extreme eigenvalues of A.
SupportEstimate growth_exponents(const TracePair& pair, std::optional<double> t_far = std::nullopt);

/// Nonnegative least-squares fit of Σ_j w_j e^{t λ_j} to the samples, with
/// candidate locations λ_j equispaced on [lo, hi] and a ridge term reg‖w‖².
/// Every third sample (indices 2, 5, 8, ...) is held out.
MeasureFit fit_measure(std::span<const Sample> samples, double lo, double hi, int grid_resolution,
                       double reg = kDefaultFitReg);

}  // namespace expconvex
