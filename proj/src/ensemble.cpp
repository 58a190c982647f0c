#include "expconvex/ensemble.hpp"

#include <cmath>

namespace expconvex {

std::uint64_t case_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

ComplexVector random_unit_vector(Rng& rng, Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(n);
  do {
    for (Index j = 0; j < n; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(j) = Complex(re, im);
    }
  } while (v.norm() < 1e-8);
  return v / v.norm();
}

HermitianMatrix random_hermitian(Rng& rng, Index n, double sigma) {
  std::normal_distribution<double> normal(0.0, sigma);
  ComplexMatrix g(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return HermitianMatrix::symmetrized(g);
}

UnitaryMatrix random_unitary(Rng& rng, Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return UnitaryMatrix::checked(std::move(q));
}

HermitianMatrix random_nonneg_offdiag(Rng& rng, Index n, double diag_lo, double diag_hi) {
  std::uniform_real_distribution<double> diag(diag_lo, diag_hi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Index r = 0; r < n; ++r) {
    m(r, r) = diag(rng);
    for (Index c = r + 1; c < n; ++c) {
      const double keep = unit(rng);
      const double value = unit(rng);
      m(r, c) = keep < 0.3 ? 0.0 : value;
      m(c, r) = m(r, c);
    }
  }
  return HermitianMatrix::symmetrized(m);
}

RankOneInstance random_rank_one_instance(std::uint64_t seed, Index max_n, Index min_n) {
  Rng rng(seed);
  std::uniform_int_distribution<Index> dim(min_n, max_n);
  std::uniform_real_distribution<double> eig(-3.0, 3.0);

  RankOneInstance out{seed, HermitianMatrix::zero(1), HermitianMatrix::zero(1), 0.0, {}};
  const Index n = dim(rng);
  do {
    out.lambda = eig(rng);
  } while (std::abs(out.lambda) < 0.1);
  out.v = random_unit_vector(rng, n);
  out.a = HermitianMatrix::symmetrized(out.lambda * out.v * out.v.adjoint());
  out.b = random_hermitian(rng, n);
  return out;
}

}  // namespace expconvex
