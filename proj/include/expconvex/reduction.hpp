#pragma once

#include <optional>

#include "expconvex/hermitian.hpp"

namespace expconvex {

inline constexpr double kPhaseZeroTol = 1e-13;

/// Default rank threshold, 1e-9·‖a‖_max.
double default_rank_tol(const HermitianMatrix& a);

struct RankOneCertificate {
  double lambda_n = 0.0;    // the single nonzero eigenvalue
  ComplexVector direction;  // unit eigenvector for lambda_n
};

struct PhaseMatrix {
  ComplexVector omegas;  // |ω_j| = 1, ω_j γ_j = |γ_j|
  UnitaryMatrix Omega;   // diag(ω)
};

/// Every intermediate of the block reduction, named after the quantities
/// it holds.
struct ReductionTrace {
  UnitaryMatrix U;          // moves the nonzero eigenvalue of A to the corner
  HermitianMatrix B_block;  // leading (n-1)x(n-1) block of U B U*
  ComplexVector b_col;      // last column of U B U* above the corner
  double mu_n = 0.0;        // corner entry of U B U*
  UnitaryMatrix V_block;    // V B_block V* = diag(M_block)
  RealVector M_block;       // eigenvalues of B_block, ascending
  ComplexVector g;          // V b_col
  ComplexVector omegas;
  UnitaryMatrix Omega;
  UnitaryMatrix W_block;    // Omega V
  RealVector g_abs;         // Omega g, real nonnegative
};

struct ReductionResult {
  UnitaryMatrix W;    // blockdiag(W_block, 1) U
  HermitianMatrix L;  // diag(0, ..., 0, lambda_n)
  HermitianMatrix M;  // [[diag(M_block), g_abs], [g_abs^T, mu_n]]
  ReductionTrace trace;
};

/// Residuals of the identities a reduction must satisfy.
struct ReductionResiduals {
  double a_residual = 0.0;         // ‖W A W* − L‖_max
  double b_residual = 0.0;         // ‖W B W* − M‖_max
  double unitarity = 0.0;          // ‖W W* − I‖_max
  double block_offdiag = 0.0;      // max |M_jk| over j < k < n
  double min_last_column = 0.0;    // min Re M_jn, j < n
  double max_last_column_imag = 0.0;
};

/// Throws RankNotOne unless exactly one eigenvalue exceeds rank_tol in modulus.
RankOneCertificate assert_rank_one(const HermitianMatrix& a, std::optional<double> rank_tol = std::nullopt);

/// Unitary U with U·direction = e_n, built from one Householder reflection and
/// a phase on the last row; its last row is direction*.
UnitaryMatrix corner_diagonalizer(const RankOneCertificate& cert);

/// ω_j = conj(γ_j)/|γ_j|, or 1 when |γ_j| ≤ kPhaseZeroTol.
PhaseMatrix phase_matrix(const ComplexVector& g);

/// Unitary W with W a W* = L diagonal and W b W* = M having nonnegative
/// off-diagonal entries. Requires a of rank one and n ≥ 2.
ReductionResult reduce(const HermitianMatrix& a, const HermitianMatrix& b,
                       std::optional<double> rank_tol = std::nullopt);

ReductionResiduals reduction_residuals(const ReductionResult& r, const HermitianMatrix& a,
                                       const HermitianMatrix& b);

}  // namespace expconvex
