#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>

#include <Eigen/Dense>

#include "expconvex/error.hpp"

namespace expconvex {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-10;
// e^x overflows a double a little above 709.
inline constexpr double kMaxExponent = 700.0;

/// ‖m‖_max, the largest entry modulus.
double max_abs(const ComplexMatrix& m);

/// max(1, ‖m‖_max); every tolerance in the library is scaled by this.
double tol_scale(const ComplexMatrix& m);

/// Builds a rows×cols matrix from row-major entries; rejects wrong length and
/// non-finite values.
ComplexMatrix make_matrix(Index rows, Index cols, std::span<const Complex> row_major);

bool all_finite(const ComplexMatrix& m);

/// Complex Hermitian matrix. The stored form is exactly (H + H*)/2, so the
/// diagonal is real and the upper and lower triangles agree bit for bit.
class HermitianMatrix {
 public:
  /// Hermitian part of m without a tolerance check. Use for values that are
  /// Hermitian by construction (sums, conjugations, exponentials).
  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  static HermitianMatrix diagonal(std::span<const double> values);
  static HermitianMatrix zero(Index n);

  [[nodiscard]] Index dim() const noexcept { return m_.rows(); }
  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return m_; }
  [[nodiscard]] Complex operator()(Index r, Index c) const { return m_(r, c); }

  [[nodiscard]] HermitianMatrix scaled(double s) const;
  [[nodiscard]] bool is_diagonal(double tol = 0.0) const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

class UnitaryMatrix {
 public:
  /// Throws NotUnitary when ‖U U* − I‖_max > tol.
  static UnitaryMatrix checked(ComplexMatrix u, double tol = kUnitaryTol);
  static UnitaryMatrix identity(Index n);

  [[nodiscard]] Index dim() const noexcept { return u_.rows(); }
  [[nodiscard]] const ComplexMatrix& matrix() const noexcept { return u_; }
  [[nodiscard]] UnitaryMatrix adjoint() const { return UnitaryMatrix(u_.adjoint()); }
  /// ‖U U* − I‖_max.
  [[nodiscard]] double unitarity_defect() const;

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return UnitaryMatrix(a.u_ * b.u_);
  }

 private:
  explicit UnitaryMatrix(ComplexMatrix u) : u_(std::move(u)) {}
  ComplexMatrix u_;
};

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  UnitaryMatrix eigenvectors;  // columns
};

struct PerronShift {
  double rho = 0.0;
  ComplexMatrix shifted;
};

struct LieApproximation {
  int p = 1;
  ComplexMatrix value;
  std::optional<double> reference_error;
};

struct EntrywiseNonnegReport {
  bool holds = false;
  double min_entry = 0.0;  // smallest real part
  Index row = 0;
  Index col = 0;
  double max_imag = 0.0;
};

/// Accepts m when ‖m − m*‖_max ≤ tol·max(1, ‖m‖_max) and returns its
/// Hermitian part.
HermitianMatrix validate_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Eigenvalues ascending (ties keep solver order); each eigenvector is
/// phased so its first non-negligible component is real positive.
EigenDecomposition eigh(const HermitianMatrix& h);

/// V diag(e^λ) V*. Throws Overflow when the largest eigenvalue exceeds 700.
ComplexMatrix matrix_exp_hermitian(const HermitianMatrix& h);

/// U h U*.
HermitianMatrix conjugate(const UnitaryMatrix& u, const HermitianMatrix& h);

/// (e^{x/p} e^{y/p})^p. Powers of two use repeated squaring, other p plain
/// iteration. With want_reference the max-norm distance to e^{x+y} is
/// attached.
LieApproximation lie_product_approx(const HermitianMatrix& x, const HermitianMatrix& y, int p,
                                    bool want_reference = false);

/// M + ρI with ρ = max(0, −min_j Re m_jj). Requires every off-diagonal entry
/// to be real and nonnegative up to 1e-12·max(1, ‖m‖_max).
PerronShift perron_shift(const HermitianMatrix& m);

/// Whether e^m is entrywise real nonnegative: Re ≥ −tol·s and |Im| ≤ tol·s
/// with s = max(1, ‖e^m‖_max).
EntrywiseNonnegReport exp_entrywise_nonneg_check(const HermitianMatrix& m,
                                                 double tol = kHermitianTol);

/// True when every off-diagonal entry is real nonnegative within tol·max(1,‖m‖_max).
bool off_diagonal_nonnegative(const HermitianMatrix& m, double tol = kHermitianTol);

}  // namespace expconvex
