#include "expconvex/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

namespace expconvex {

namespace {

// Components below this modulus are skipped when fixing eigenvector phases.
constexpr double kPhaseAnchorTol = 1e-8;

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", expected non-empty square";
    throw Error(ErrorKind::NotSquare, os.str());
  }
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimensions " << a << " and " << b << " differ";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  for (Index j = 0; j < h.rows(); ++j) h(j, j) = Complex(h(j, j).real(), 0.0);
  return h;
}

ComplexMatrix exp_from_eigen(const EigenDecomposition& ed) {
  const double top = ed.eigenvalues.maxCoeff();
  if (!(top <= kMaxExponent)) {
    std::ostringstream os;
    os << "largest eigenvalue " << top << " exceeds " << kMaxExponent;
    throw Error(ErrorKind::Overflow, os.str());
  }
  const ComplexMatrix& v = ed.eigenvectors.matrix();
  const RealVector e = ed.eigenvalues.array().exp();
  return hermitian_part(v * e.cast<Complex>().asDiagonal() * v.adjoint());
}

bool is_power_of_two(int p) { return p > 0 && (p & (p - 1)) == 0; }

}  // namespace

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double tol_scale(const ComplexMatrix& m) { return std::max(1.0, max_abs(m)); }

bool all_finite(const ComplexMatrix& m) {
  return m.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
      .all();
}

ComplexMatrix make_matrix(Index rows, Index cols, std::span<const Complex> row_major) {
  if (rows <= 0 || cols <= 0) throw Error(ErrorKind::InvalidArgument, "matrix dimensions must be positive");
  if (static_cast<Index>(row_major.size()) != rows * cols) {
    std::ostringstream os;
    os << "expected " << rows * cols << " entries, got " << row_major.size();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  ComplexMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const Complex z = row_major[static_cast<std::size_t>(r * cols + c)];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream os;
        os << "entry (" << r << ", " << c << ") is not finite";
        throw Error(ErrorKind::NonFinite, os.str());
      }
      m(r, c) = z;
    }
  }
  return m;
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  require_square(m, "matrix");
  if (!all_finite(m)) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  return HermitianMatrix(hermitian_part(m));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorKind::InvalidArgument, "empty diagonal");
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(values.size()), static_cast<Index>(values.size()));
  for (std::size_t j = 0; j < values.size(); ++j) m(static_cast<Index>(j), static_cast<Index>(j)) = values[j];
  return symmetrized(m);
}

HermitianMatrix HermitianMatrix::zero(Index n) { return symmetrized(ComplexMatrix::Zero(n, n)); }

HermitianMatrix HermitianMatrix::scaled(double s) const { return HermitianMatrix(m_ * s); }

bool HermitianMatrix::is_diagonal(double tol) const {
  for (Index r = 0; r < dim(); ++r)
    for (Index c = 0; c < dim(); ++c)
      if (r != c && std::abs(m_(r, c)) > tol) return false;
  return true;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "sum");
  return HermitianMatrix(a.m_ + b.m_);
}

UnitaryMatrix UnitaryMatrix::checked(ComplexMatrix u, double tol) {
  require_square(u, "unitary candidate");
  UnitaryMatrix out(std::move(u));
  const double defect = out.unitarity_defect();
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << "||U U* - I||_max = " << defect << " exceeds " << tol;
    throw Error(ErrorKind::NotUnitary, os.str());
  }
  return out;
}

UnitaryMatrix UnitaryMatrix::identity(Index n) { return UnitaryMatrix(ComplexMatrix::Identity(n, n)); }

double UnitaryMatrix::unitarity_defect() const {
  return max_abs(u_ * u_.adjoint() - ComplexMatrix::Identity(dim(), dim()));
}

HermitianMatrix validate_hermitian(const ComplexMatrix& m, double tol) {
  require_square(m, "matrix");
  if (!all_finite(m)) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  const double deviation = max_abs(m - m.adjoint());
  const double bound = tol * tol_scale(m);
  if (deviation > bound) {
    std::ostringstream os;
    os << "||H - H*||_max = " << deviation << " exceeds " << bound;
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  return HermitianMatrix::symmetrized(m);
}

EigenDecomposition eigh(const HermitianMatrix& h) {
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  const Index n = h.dim();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return solver.eigenvalues()(a) < solver.eigenvalues()(b); });

  RealVector values(n);
  ComplexMatrix vectors(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    values(k) = solver.eigenvalues()(src);
    ComplexVector col = solver.eigenvectors().col(src);
    for (Index r = 0; r < n; ++r) {
      if (std::abs(col(r)) > kPhaseAnchorTol) {
        col *= std::conj(col(r)) / std::abs(col(r));
        col(r) = Complex(col(r).real(), 0.0);
        break;
      }
    }
    vectors.col(k) = col;
  }

  const double residual = max_abs(h.matrix() * vectors - vectors * values.cast<Complex>().asDiagonal());
  if (!(residual <= kReconstructionTol * tol_scale(h.matrix()))) {
    std::ostringstream os;
    os << "eigendecomposition residual " << residual << " above bound";
    throw Error(ErrorKind::ConvergenceFailure, os.str());
  }
  return EigenDecomposition{std::move(values), UnitaryMatrix::checked(std::move(vectors))};
}

ComplexMatrix matrix_exp_hermitian(const HermitianMatrix& h) { return exp_from_eigen(eigh(h)); }

HermitianMatrix conjugate(const UnitaryMatrix& u, const HermitianMatrix& h) {
  require_same_dim(u.dim(), h.dim(), "conjugate");
  return HermitianMatrix::symmetrized(u.matrix() * h.matrix() * u.matrix().adjoint());
}

LieApproximation lie_product_approx(const HermitianMatrix& x, const HermitianMatrix& y, int p,
                                    bool want_reference) {
  require_same_dim(x.dim(), y.dim(), "lie_product_approx");
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "Lie step count p must be >= 1");

  const double inv_p = 1.0 / static_cast<double>(p);
  const ComplexMatrix step = matrix_exp_hermitian(x.scaled(inv_p)) * matrix_exp_hermitian(y.scaled(inv_p));

  ComplexMatrix value;
  if (is_power_of_two(p)) {
    value = step;
    for (int k = p; k > 1; k /= 2) value = value * value;
  } else {
    value = step;
    for (int k = 1; k < p; ++k) value = value * step;
  }
  if (!all_finite(value)) throw Error(ErrorKind::Overflow, "Lie product overflowed");

  LieApproximation out{p, std::move(value), std::nullopt};
  if (want_reference) out.reference_error = max_abs(out.value - matrix_exp_hermitian(x + y));
  return out;
}

bool off_diagonal_nonnegative(const HermitianMatrix& m, double tol) {
  const double bound = tol * tol_scale(m.matrix());
  for (Index r = 0; r < m.dim(); ++r)
    for (Index c = 0; c < m.dim(); ++c)
      if (r != c && (m(r, c).real() < -bound || std::abs(m(r, c).imag()) > bound)) return false;
  return true;
}

PerronShift perron_shift(const HermitianMatrix& m) {
  const double bound = kHermitianTol * tol_scale(m.matrix());
  for (Index r = 0; r < m.dim(); ++r) {
    for (Index c = 0; c < m.dim(); ++c) {
      if (r == c) continue;
      const Complex z = m(r, c);
      if (z.real() < -bound || std::abs(z.imag()) > bound) {
        std::ostringstream os;
        os << "off-diagonal entry (" << r << ", " << c << ") = " << z << " is not real nonnegative";
        throw Error(ErrorKind::HypothesisViolated, os.str());
      }
    }
  }
  const double min_diag = m.matrix().diagonal().real().minCoeff();
  PerronShift out;
  out.rho = std::max(0.0, -min_diag);
  out.shifted = m.matrix();
  out.shifted.diagonal().array() += out.rho;
  return out;
}

EntrywiseNonnegReport exp_entrywise_nonneg_check(const HermitianMatrix& m, double tol) {
  const ComplexMatrix e = matrix_exp_hermitian(m);
  const double bound = tol * tol_scale(e);
  EntrywiseNonnegReport rep;
  rep.min_entry = e(0, 0).real();
  for (Index r = 0; r < e.rows(); ++r) {
    for (Index c = 0; c < e.cols(); ++c) {
      if (e(r, c).real() < rep.min_entry) {
        rep.min_entry = e(r, c).real();
        rep.row = r;
        rep.col = c;
      }
      rep.max_imag = std::max(rep.max_imag, std::abs(e(r, c).imag()));
    }
  }
  rep.holds = rep.min_entry >= -bound && rep.max_imag <= bound;
  return rep;
}

}  // namespace expconvex
