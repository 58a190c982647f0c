#include "expconvex/transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "expconvex/nnls.hpp"

namespace expconvex {

namespace {

RealVector exponent_spectrum(const TracePair& pair, double t) {
  return eigh(pair.A().scaled(t) + pair.B()).eigenvalues;
}

}  // namespace

TracePair::TracePair(HermitianMatrix a, HermitianMatrix b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.dim() != b_.dim()) {
    std::ostringstream os;
    os << "A is " << a_.dim() << "x" << a_.dim() << " but B is " << b_.dim() << "x" << b_.dim();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.location) || !std::isfinite(a.weight)) {
      throw Error(ErrorKind::NonFinite, "atom has non-finite location or weight");
    }
    if (a.weight < 0.0) throw Error(ErrorKind::InvalidArgument, "atom weight is negative");
  }
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.location < y.location; });
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && a.location - atoms_.back().location <= kAtomMergeTol) {
      atoms_.back().weight += a.weight;
    } else {
      atoms_.push_back(a);
    }
  }
}

double AtomicMeasure::total_mass() const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.weight;
  return s;
}

double trace_f(const TracePair& pair, double t) {
  const RealVector nu = exponent_spectrum(pair, t);
  if (nu.maxCoeff() > kMaxExponent) {
    std::ostringstream os;
    os << "tr exp(tA+B) overflows at t=" << t;
    throw Error(ErrorKind::Overflow, os.str());
  }
  return nu.array().exp().sum();
}

double log_trace_f(const TracePair& pair, double t) {
  const RealVector nu = exponent_spectrum(pair, t);
  const double top = nu.maxCoeff();
  if (!std::isfinite(top)) throw Error(ErrorKind::Overflow, "exponent spectrum is not finite");
  return top + std::log((nu.array() - top).exp().sum());
}

ScalarFunction trace_function(const TracePair& pair) {
  return ScalarFunction("trace_exp(tA+B)", [pair](double t) { return trace_f(pair, t); });
}

std::vector<Sample> sample_trace_f(const TracePair& pair, const TGrid& grid) {
  std::vector<Sample> out;
  out.reserve(grid.size());
  for (double t : grid.points()) out.push_back(Sample{t, trace_f(pair, t)});
  return out;
}

double laplace_transform(const AtomicMeasure& measure, double t) {
  double s = 0.0;
  for (const Atom& a : measure.atoms()) s += a.weight * std::exp(t * a.location);
  if (!std::isfinite(s)) {
    std::ostringstream os;
    os << "Laplace transform overflows at t=" << t;
    throw Error(ErrorKind::Overflow, os.str());
  }
  return s;
}

AtomicMeasure commuting_measure(const TracePair& pair, double comm_tol) {
  const ComplexMatrix& a = pair.A().matrix();
  const ComplexMatrix& b = pair.B().matrix();
  const double commutator = max_abs(a * b - b * a);
  const double bound = comm_tol * std::max(1.0, max_abs(a) * max_abs(b));
  if (commutator > bound) {
    std::ostringstream os;
    os << "||AB - BA||_max = " << commutator << " exceeds " << bound;
    throw Error(ErrorKind::NotCommuting, os.str());
  }

  // In an eigenbasis of A, B is block diagonal over the eigenspaces of A.
  const EigenDecomposition ed = eigh(pair.A());
  const ComplexMatrix& v = ed.eigenvectors.matrix();
  const ComplexMatrix b_rot = v.adjoint() * b * v;

  std::vector<Atom> atoms;
  const Index n = pair.dim();
  Index start = 0;
  while (start < n) {
    Index stop = start + 1;
    while (stop < n && ed.eigenvalues(stop) - ed.eigenvalues(stop - 1) <= kAtomMergeTol) ++stop;
    const Index len = stop - start;
    const HermitianMatrix block = HermitianMatrix::symmetrized(b_rot.block(start, start, len, len));
    const double weight = matrix_exp_hermitian(block).trace().real();
    atoms.push_back(Atom{ed.eigenvalues.segment(start, len).mean(), weight});
    start = stop;
  }
  return AtomicMeasure(std::move(atoms));
}

double default_t_far(const TracePair& pair) {
  const double a = max_abs(pair.A().matrix());
  return a > 0.0 ? 40.0 / a : 40.0;
}

SupportEstimate growth_exponents(const TracePair& pair, std::optional<double> t_far) {
  const double far = t_far.value_or(default_t_far(pair));
  if (!(far > 0.0) || !std::isfinite(far)) throw Error(ErrorKind::InvalidArgument, "t_far must be positive");

  SupportEstimate out;
  out.t_far = far;
  out.lambda_max_est = (log_trace_f(pair, 2.0 * far) - log_trace_f(pair, far)) / far;
  out.lambda_min_est = (log_trace_f(pair, -2.0 * far) - log_trace_f(pair, -far)) / -far;
  out.lambda_min_est = std::min(out.lambda_min_est, out.lambda_max_est);

  const RealVector spectrum = eigh(pair.A()).eigenvalues;
  out.lambda_min_true = spectrum(0);
  out.lambda_max_true = spectrum(spectrum.size() - 1);
  return out;
}

MeasureFit fit_measure(std::span<const Sample> samples, double lo, double hi, int grid_resolution, double reg) {
  if (grid_resolution < 1) throw Error(ErrorKind::InvalidArgument, "grid_resolution must be >= 1");
  if (!(reg >= 0.0) || !std::isfinite(reg)) throw Error(ErrorKind::InvalidArgument, "reg must be >= 0");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw Error(ErrorKind::NonFinite, "support bounds are not finite");
  if (grid_resolution > 1 ? !(lo < hi) : !(lo <= hi)) {
    throw Error(ErrorKind::InvalidArgument, "support needs lo < hi");
  }
  if (samples.empty() || 4 * samples.size() < static_cast<std::size_t>(grid_resolution)) {
    std::ostringstream os;
    os << samples.size() << " samples are too few for resolution " << grid_resolution;
    throw Error(ErrorKind::InvalidArgument, os.str());
  }
  for (const Sample& s : samples) {
    if (!std::isfinite(s.t) || !std::isfinite(s.value)) throw Error(ErrorKind::NonFinite, "sample is not finite");
  }

  MeasureFit fit;
  fit.grid_resolution = grid_resolution;
  fit.support_lo = lo;
  fit.support_hi = hi;

  std::vector<double> locations(static_cast<std::size_t>(grid_resolution));
  if (grid_resolution == 1) {
    locations[0] = 0.5 * (lo + hi);
  } else {
    fit.cell_width = (hi - lo) / static_cast<double>(grid_resolution - 1);
    for (int j = 0; j < grid_resolution; ++j) locations[static_cast<std::size_t>(j)] = lo + fit.cell_width * j;
    locations.back() = hi;
  }

  std::vector<Sample> training;
  std::vector<Sample> holdout;
  for (std::size_t k = 0; k < samples.size(); ++k) (k % 3 == 2 ? holdout : training).push_back(samples[k]);
  fit.training_count = training.size();
  fit.holdout_count = holdout.size();

  // Ridge term as extra rows; columns are normalized for the solve and the
  // weights mapped back, which leaves the constrained problem unchanged.
  const auto rows = static_cast<Index>(training.size());
  const auto cols = static_cast<Index>(grid_resolution);
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows + cols, cols);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows + cols);
  for (Index k = 0; k < rows; ++k) {
    for (Index j = 0; j < cols; ++j) {
      design(k, j) = std::exp(training[static_cast<std::size_t>(k)].t * locations[static_cast<std::size_t>(j)]);
    }
    rhs(k) = training[static_cast<std::size_t>(k)].value;
  }
  if (!design.allFinite()) throw Error(ErrorKind::Overflow, "design matrix overflows");
  const double ridge = std::sqrt(reg);
  for (Index j = 0; j < cols; ++j) design(rows + j, j) = ridge;

  const Eigen::VectorXd col_norms = design.colwise().norm().transpose();
  Eigen::MatrixXd scaled = design;
  for (Index j = 0; j < cols; ++j) scaled.col(j) /= col_norms(j);

  const NnlsResult solved = nnls(scaled, rhs);
  if (!solved.converged) {
    std::ostringstream os;
    os << "NNLS did not converge after " << solved.iterations << " iterations";
    throw Error(ErrorKind::IllConditioned, os.str());
  }
  const Eigen::VectorXd weights = solved.x.cwiseQuotient(col_norms);

  std::vector<Atom> atoms;
  for (Index j = 0; j < cols; ++j)
    if (weights(j) > 0.0) atoms.push_back(Atom{locations[static_cast<std::size_t>(j)], weights(j)});
  fit.measure = AtomicMeasure(std::move(atoms));

  const Eigen::VectorXd fitted = design.topRows(rows) * weights;
  const double f_norm = rhs.head(rows).norm();
  const double r_norm = (fitted - rhs.head(rows)).norm();
  fit.training_residual = f_norm > 0.0 ? r_norm / f_norm : r_norm;

  const auto relative_error = [&](const Sample& s) {
    const double err = std::abs(laplace_transform(fit.measure, s.t) - s.value);
    return s.value != 0.0 ? err / std::abs(s.value) : err;
  };
  const std::vector<Sample>& check = holdout.empty() ? training : holdout;
  for (const Sample& s : check) fit.holdout_error = std::max(fit.holdout_error, relative_error(s));
  if (!std::isfinite(fit.training_residual) || !std::isfinite(fit.holdout_error)) {
    throw Error(ErrorKind::IllConditioned, "fit produced non-finite residuals");
  }
  return fit;
}

}  // namespace expconvex
