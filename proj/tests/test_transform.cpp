#include "doctest.h"

#include <cmath>
#include <numbers>

#include "expconvex/ensemble.hpp"
#include "expconvex/transform.hpp"
#include "oracles.hpp"

using namespace expconvex;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an expconvex::Error");
  return ErrorKind::InvalidArgument;
}

HermitianMatrix diag(std::vector<double> d) { return HermitianMatrix::diagonal(d); }

HermitianMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  return validate_hermitian(x);
}

}  // namespace

TEST_CASE("trace_f") {
  CHECK(trace_f(TracePair(HermitianMatrix::zero(2), HermitianMatrix::zero(2)), 0.7) == doctest::Approx(2.0));
  const TracePair simple(diag({0.0, 1.0}), HermitianMatrix::zero(2));
  CHECK(trace_f(simple, 0.0) == doctest::Approx(2.0));
  CHECK(trace_f(simple, std::log(3.0)) == doctest::Approx(4.0).epsilon(1e-14));
  const TracePair coupled(diag({0.0, 1.0}), pauli_x());
  CHECK(trace_f(coupled, 0.0) == doctest::Approx(3.0861612696304876).epsilon(1e-14));

  SUBCASE("matches the Taylor oracle") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
      const Index n = 2 + trial % 5;
      const HermitianMatrix a = random_hermitian(rng, n);
      const HermitianMatrix b = random_hermitian(rng, n);
      for (double t : {-1.5, 0.0, 0.8}) {
        const double f = oracle::trace_exp(a.matrix(), b.matrix(), t);
        CHECK(std::abs(trace_f(TracePair(a, b), t) - f) <= 1e-10 * std::max(1.0, f));
      }
    }
  }
  SUBCASE("log form survives where the value overflows") {
    const TracePair big(diag({0.0, 1.0}), HermitianMatrix::zero(2));
    CHECK(log_trace_f(big, 1000.0) == doctest::Approx(1000.0));
    CHECK(kind_of([&] { trace_f(big, 1000.0); }) == ErrorKind::Overflow);
  }
  SUBCASE("dimension mismatch") {
    CHECK(kind_of([] { TracePair(HermitianMatrix::zero(2), HermitianMatrix::zero(3)); }) ==
          ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("sample_trace_f") {
  const auto zero = sample_trace_f(TracePair(HermitianMatrix::zero(3), HermitianMatrix::zero(3)),
                                   TGrid::from_points({-1.0, 0.0, 1.0}));
  REQUIRE(zero.size() == 3);
  for (const Sample& s : zero) CHECK(s.value == doctest::Approx(3.0));
  CHECK(zero[0].t == -1.0);

  const auto one = sample_trace_f(TracePair(diag({0.0, 1.0}), pauli_x()), TGrid::from_points({0.0}));
  REQUIRE(one.size() == 1);
  CHECK(one[0].value == doctest::Approx(3.0861612696304876));

  CHECK(sample_trace_f(TracePair(diag({0.0, 1.0}), pauli_x()), TGrid::from_points({5.0})).size() == 1);
}

TEST_CASE("laplace_transform and AtomicMeasure") {
  CHECK(laplace_transform(AtomicMeasure({{0.0, 1.0}, {1.0, 1.0}}), std::log(3.0)) == doctest::Approx(4.0));
  CHECK(laplace_transform(AtomicMeasure(), 12.0) == 0.0);
  CHECK(laplace_transform(AtomicMeasure({{-1.0, 2.0}}), 0.0) == 2.0);

  const AtomicMeasure merged({{1.0, 1.0}, {-2.0, 0.5}, {1.0 + 1e-12, 2.0}});
  REQUIRE(merged.atoms().size() == 2);
  CHECK(merged.atoms()[0].location == -2.0);
  CHECK(merged.atoms()[1].weight == doctest::Approx(3.0));
  CHECK(merged.total_mass() == doctest::Approx(3.5));

  CHECK(kind_of([] { AtomicMeasure({{0.0, -1.0}}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { laplace_transform(AtomicMeasure({{1.0, 1.0}}), 1000.0); }) == ErrorKind::Overflow);
}

TEST_CASE("commuting_measure") {
  SUBCASE("diag(0, 1), B = 0") {
    const AtomicMeasure m = commuting_measure(TracePair(diag({0.0, 1.0}), HermitianMatrix::zero(2)));
    REQUIRE(m.atoms().size() == 2);
    CHECK(m.atoms()[0].location == doctest::Approx(0.0));
    CHECK(m.atoms()[0].weight == doctest::Approx(1.0));
    CHECK(m.atoms()[1].location == doctest::Approx(1.0));
    CHECK(m.atoms()[1].weight == doctest::Approx(1.0));
  }
  SUBCASE("repeated eigenvalue merges weights") {
    const AtomicMeasure m = commuting_measure(TracePair(diag({1.0, 1.0}), diag({std::numbers::ln2, 0.0})));
    REQUIRE(m.atoms().size() == 1);
    CHECK(m.atoms()[0].location == doctest::Approx(1.0));
    CHECK(m.atoms()[0].weight == doctest::Approx(3.0));
  }
  SUBCASE("non-commuting pair") {
    CHECK(kind_of([] { commuting_measure(TracePair(diag({0.0, 1.0}), pauli_x())); }) == ErrorKind::NotCommuting);
  }
  SUBCASE("round trip on random commuting pairs") {
    Rng rng(55);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 20; ++trial) {
      const Index n = 2 + trial % 6;
      const UnitaryMatrix v = random_unitary(rng, n);
      RealVector da(n), db(n);
      for (Index j = 0; j < n; ++j) {
        da(j) = std::round(2.0 * normal(rng)) / 2.0;  // repeated eigenvalues are likely
        db(j) = normal(rng);
      }
      const ComplexMatrix a = v.matrix() * da.cast<Complex>().asDiagonal() * v.matrix().adjoint();
      const ComplexMatrix b = v.matrix() * db.cast<Complex>().asDiagonal() * v.matrix().adjoint();
      const TracePair pair(HermitianMatrix::symmetrized(a), HermitianMatrix::symmetrized(b));
      const AtomicMeasure m = commuting_measure(pair);
      for (const Atom& at : m.atoms()) CHECK(at.weight > 0.0);
      for (double t : {-2.0, -0.5, 0.0, 1.0, 2.0}) {
        const double f = trace_f(pair, t);
        CHECK(std::abs(laplace_transform(m, t) - f) <= 1e-10 * f);
      }
      CHECK(std::abs(m.total_mass() - db.array().exp().sum()) <= 1e-10 * m.total_mass());
    }
  }
}

TEST_CASE("growth_exponents") {
  SUBCASE("diag(0, 1), B = 0") {
    const SupportEstimate e = growth_exponents(TracePair(diag({0.0, 1.0}), HermitianMatrix::zero(2)));
    CHECK(e.lambda_max_est == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(e.lambda_min_est) < 1e-6);
    CHECK(e.t_far == doctest::Approx(40.0));
  }
  SUBCASE("A = 0") {
    const SupportEstimate e = growth_exponents(TracePair(HermitianMatrix::zero(2), pauli_x()));
    CHECK(std::abs(e.lambda_min_est) < 1e-12);
    CHECK(std::abs(e.lambda_max_est) < 1e-12);
  }
  SUBCASE("random rank-one pairs, n = 4") {
    for (std::uint64_t i = 0; i < 20; ++i) {
      const RankOneInstance inst = random_rank_one_instance(case_seed(4, i), 4, 4);
      const SupportEstimate e = growth_exponents(TracePair(inst.a, inst.b));
      CHECK(std::abs(e.lambda_min_est - e.lambda_min_true) <= 0.05);
      CHECK(std::abs(e.lambda_max_est - e.lambda_max_true) <= 0.05);
    }
  }
  SUBCASE("bad far point") {
    CHECK(kind_of([] { growth_exponents(TracePair(HermitianMatrix::zero(2), HermitianMatrix::zero(2)), -1.0); }) ==
          ErrorKind::InvalidArgument);
  }
}

TEST_CASE("fit_measure") {
  const TGrid grid = TGrid::equispaced(-2.0, 2.0, 21);
  SUBCASE("1 + e^t on [0, 1] at resolution 41") {
    const auto samples = sample_trace_f(TracePair(diag({0.0, 1.0}), HermitianMatrix::zero(2)), grid);
    const MeasureFit fit = fit_measure(samples, 0.0, 1.0, 41);
    CHECK(fit.holdout_error <= 1e-3);
    CHECK(fit.measure.total_mass() == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(fit.cell_width == doctest::Approx(0.025));
    CHECK(fit.training_count == 14);
    CHECK(fit.holdout_count == 7);
    for (const Atom& at : fit.measure.atoms()) CHECK(at.weight >= 0.0);
  }
  SUBCASE("zero samples give the zero measure") {
    std::vector<Sample> samples;
    for (double t : grid.points()) samples.push_back({t, 0.0});
    const MeasureFit fit = fit_measure(samples, 0.0, 1.0, 11);
    CHECK(fit.measure.empty());
    CHECK(fit.training_residual == 0.0);
    CHECK(fit.holdout_error == 0.0);
  }
  SUBCASE("non-commuting Pauli-X pair") {
    const TracePair pair(diag({0.0, 1.0}), pauli_x());
    const auto samples = sample_trace_f(pair, grid);
    const MeasureFit fit = fit_measure(samples, 0.0, 1.0, 41);
    CHECK(fit.holdout_error <= 1e-3);
    for (const Atom& at : fit.measure.atoms()) {
      CHECK(at.weight >= 0.0);
      CHECK(at.location >= 0.0);
      CHECK(at.location <= 1.0);
    }
    CHECK(fit.measure.total_mass() == doctest::Approx(trace_f(pair, 0.0)).epsilon(1e-3));
  }
  SUBCASE("resolution 1 recovers a pure exponential") {
    const auto samples = sample_trace_f(TracePair(diag({0.5, 0.5}), HermitianMatrix::zero(2)), grid);
    const MeasureFit fit = fit_measure(samples, 0.0, 1.0, 1);
    REQUIRE(fit.measure.atoms().size() == 1);
    CHECK(fit.measure.atoms()[0].location == 0.5);
    CHECK(fit.measure.atoms()[0].weight == doctest::Approx(2.0));
    CHECK(fit.holdout_error < 1e-9);
  }
  SUBCASE("resolution 1 underfits a spread measure") {
    const auto samples = sample_trace_f(TracePair(diag({0.0, 1.0}), HermitianMatrix::zero(2)), grid);
    CHECK(fit_measure(samples, 0.0, 1.0, 1).holdout_error > 1e-3);
  }
  SUBCASE("argument errors") {
    const auto samples = sample_trace_f(TracePair(diag({0.0, 1.0}), HermitianMatrix::zero(2)), grid);
    CHECK(kind_of([&] { fit_measure(samples, 0.0, 1.0, 0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { fit_measure(samples, 1.0, 0.0, 11); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { fit_measure(samples, 0.0, 1.0, 11, -1.0); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([&] { fit_measure(samples, 0.0, 1.0, 200); }) == ErrorKind::InvalidArgument);
  }
}
