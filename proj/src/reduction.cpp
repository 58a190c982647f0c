#include "expconvex/reduction.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace expconvex {

double default_rank_tol(const HermitianMatrix& a) { return 1e-9 * max_abs(a.matrix()); }

RankOneCertificate assert_rank_one(const HermitianMatrix& a, std::optional<double> rank_tol) {
  const double tol = rank_tol.value_or(default_rank_tol(a));
  const EigenDecomposition ed = eigh(a);

  std::vector<Index> large;
  for (Index j = 0; j < ed.eigenvalues.size(); ++j)
    if (std::abs(ed.eigenvalues(j)) > tol) large.push_back(j);

  if (large.size() != 1) {
    std::ostringstream os;
    os << large.size() << " eigenvalues exceed rank_tol " << tol << "; spectrum:";
    for (Index j = 0; j < ed.eigenvalues.size(); ++j) os << ' ' << ed.eigenvalues(j);
    if (!large.empty()) {
      os << "; large:";
      for (Index j : large) os << ' ' << ed.eigenvalues(j);
    }
    throw Error(ErrorKind::RankNotOne, os.str());
  }
  const Index k = large.front();
  return RankOneCertificate{ed.eigenvalues(k), ed.eigenvectors.matrix().col(k)};
}

UnitaryMatrix corner_diagonalizer(const RankOneCertificate& cert) {
  const ComplexVector& x = cert.direction;
  const Index n = x.size();
  const Index last = n - 1;

  // Reflection H = I - 2 w w*/(w* w) sends x to alpha e_n; choosing alpha
  // opposite to the phase of x_n keeps w_n away from cancellation.
  const double xn_abs = std::abs(x(last));
  const Complex phase = xn_abs > 0.0 ? x(last) / xn_abs : Complex(1.0, 0.0);
  const Complex alpha = -phase * x.norm();

  ComplexVector w = x;
  w(last) -= alpha;
  const double ww = w.squaredNorm();
  ComplexMatrix u = ComplexMatrix::Identity(n, n) - (2.0 / ww) * (w * w.adjoint());
  u.row(last) *= std::conj(alpha) / std::abs(alpha);
  return UnitaryMatrix::checked(std::move(u));
}

PhaseMatrix phase_matrix(const ComplexVector& g) {
  ComplexVector omegas(g.size());
  for (Index j = 0; j < g.size(); ++j) {
    const double mag = std::abs(g(j));
    omegas(j) = mag > kPhaseZeroTol ? std::conj(g(j)) / mag : Complex(1.0, 0.0);
  }
  ComplexMatrix omega = omegas.asDiagonal();
  return PhaseMatrix{std::move(omegas), UnitaryMatrix::checked(std::move(omega))};
}

ReductionResult reduce(const HermitianMatrix& a, const HermitianMatrix& b, std::optional<double> rank_tol) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "A is " << a.dim() << "x" << a.dim() << " but B is " << b.dim() << "x" << b.dim();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  if (a.dim() < 2) throw Error(ErrorKind::InvalidArgument, "reduction needs n >= 2");

  const Index n = a.dim();
  const Index m = n - 1;
  const RankOneCertificate cert = assert_rank_one(a, rank_tol);

  // Step 1: corner form of A.
  UnitaryMatrix u = corner_diagonalizer(cert);
  const HermitianMatrix b1 = conjugate(u, b);

  // Step 2: diagonalize the leading block of B and rotate the phases of the
  // coupling column.
  HermitianMatrix b_block = HermitianMatrix::symmetrized(b1.matrix().topLeftCorner(m, m));
  ComplexVector b_col = b1.matrix().topRightCorner(m, 1);
  const double mu_n = b1(m, m).real();

  EigenDecomposition block_eig = eigh(b_block);
  UnitaryMatrix v_block = block_eig.eigenvectors.adjoint();
  ComplexVector g = v_block.matrix() * b_col;
  PhaseMatrix phases = phase_matrix(g);
  UnitaryMatrix w_block = phases.Omega * v_block;

  RealVector g_abs(m);
  for (Index j = 0; j < m; ++j) g_abs(j) = std::abs(g(j));

  // Step 3: assemble W, L, M.
  ComplexMatrix w_embed = ComplexMatrix::Identity(n, n);
  w_embed.topLeftCorner(m, m) = w_block.matrix();
  UnitaryMatrix w = UnitaryMatrix::checked(w_embed) * u;

  std::vector<double> l_diag(static_cast<std::size_t>(n), 0.0);
  l_diag.back() = cert.lambda_n;

  ComplexMatrix m_mat = ComplexMatrix::Zero(n, n);
  for (Index j = 0; j < m; ++j) {
    m_mat(j, j) = block_eig.eigenvalues(j);
    m_mat(j, m) = g_abs(j);
    m_mat(m, j) = g_abs(j);
  }
  m_mat(m, m) = mu_n;

  ReductionTrace trace{std::move(u),
                       std::move(b_block),
                       std::move(b_col),
                       mu_n,
                       std::move(v_block),
                       block_eig.eigenvalues,
                       std::move(g),
                       std::move(phases.omegas),
                       std::move(phases.Omega),
                       std::move(w_block),
                       std::move(g_abs)};
  return ReductionResult{std::move(w), HermitianMatrix::diagonal(l_diag), HermitianMatrix::symmetrized(m_mat),
                         std::move(trace)};
}

ReductionResiduals reduction_residuals(const ReductionResult& r, const HermitianMatrix& a,
                                       const HermitianMatrix& b) {
  ReductionResiduals out;
  out.a_residual = max_abs(conjugate(r.W, a).matrix() - r.L.matrix());
  out.b_residual = max_abs(conjugate(r.W, b).matrix() - r.M.matrix());
  out.unitarity = r.W.unitarity_defect();
  const Index n = r.M.dim();
  const Index last = n - 1;
  out.min_last_column = n > 1 ? r.M(0, last).real() : 0.0;
  for (Index j = 0; j < last; ++j) {
    for (Index k = j + 1; k < last; ++k) out.block_offdiag = std::max(out.block_offdiag, std::abs(r.M(j, k)));
    out.min_last_column = std::min(out.min_last_column, r.M(j, last).real());
    out.max_last_column_imag = std::max(out.max_last_column_imag, std::abs(r.M(j, last).imag()));
  }
  return out;
}

}  // namespace expconvex
