#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "expconvex/hermitian.hpp"

namespace expconvex {

using Rng = std::mt19937_64;

/// Human-readable statement of the random laws below; copied into reports.
inline constexpr std::string_view kEnsembleLaw =
    "n uniform on {2..max_n}; A = lambda v v* with lambda uniform on [-3,3] rejecting |lambda| < 0.1, "
    "v = normalized complex Gaussian (re, im iid N(0,1)); B = (G + G*)/2 with G complex Gaussian "
    "(re, im iid N(0,1)); per-case generator mt19937_64 seeded by seed_seq{master, case_index}";

struct RankOneInstance {
  std::uint64_t seed = 0;
  HermitianMatrix a;
  HermitianMatrix b;
  double lambda = 0.0;
  ComplexVector v;
};

/// Seed for case `index` of a run with master seed `master`.
std::uint64_t case_seed(std::uint64_t master, std::uint64_t index);

ComplexVector random_unit_vector(Rng& rng, Index n);

/// (G + G*)/2 with re, im of G iid N(0, sigma²).
HermitianMatrix random_hermitian(Rng& rng, Index n, double sigma = 1.0);

/// Haar-distributed unitary from the QR factorization of a complex Gaussian.
UnitaryMatrix random_unitary(Rng& rng, Index n);

/// Real symmetric matrix with diagonal uniform on [diag_lo, diag_hi] and
/// off-diagonal entries uniform on [0, 1], roughly 30% of them zeroed.
HermitianMatrix random_nonneg_offdiag(Rng& rng, Index n, double diag_lo = -2.0, double diag_hi = 2.0);

/// One draw from the rank-one law in kEnsembleLaw, with n uniform on
/// {min_n..max_n}.
RankOneInstance random_rank_one_instance(std::uint64_t seed, Index max_n, Index min_n = 2);

}  // namespace expconvex
