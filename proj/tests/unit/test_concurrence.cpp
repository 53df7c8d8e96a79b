#include <gtest/gtest.h>

#include <cmath>

#include "entweb/concurrence.hpp"
#include "entweb/error.hpp"
#include "entweb/random.hpp"
#include "support/oracles.hpp"

using namespace entweb;

namespace {

ComplexMatrix projector(std::vector<cplx> v) {
  return ComplexMatrix::outer(v, v);
}

ComplexMatrix kron(const std::array<cplx, 4> &u, const std::array<cplx, 4> &v) {
  ComplexMatrix out(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + c, 2 * b + d) = u[2 * a + b] * v[2 * c + d];
  return out;
}

ComplexMatrix random_pair_density(std::uint64_t index, std::size_t rank) {
  auto rng = sample_engine(31, 1, index);
  return ginibre_density(4, rank, rng);
}

const double kS = 1.0 / std::sqrt(2.0);

} // namespace

TEST(SpinFlip, Examples) {
  const ComplexMatrix mixed = ComplexMatrix::identity(4) * cplx(0.25);
  EXPECT_LT(max_abs_diff(spin_flip(mixed), mixed), 1e-15);

  const auto up = spin_flip(projector({1, 0, 0, 0}));
  EXPECT_LT(max_abs_diff(up, projector({0, 0, 0, 1})), 1e-15);

  const auto phi = projector({kS, 0, 0, kS});
  EXPECT_LT(max_abs_diff(spin_flip(phi), phi), 1e-15);
}

TEST(SpinFlip, Involution) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_pair_density(s, 4);
    const auto f = spin_flip(rho);
    EXPECT_LT(max_abs_diff(spin_flip(f), rho), 1e-12);
    EXPECT_LT(hermiticity_defect(f), 1e-12);
    EXPECT_NEAR(std::abs(f.trace() - 1.0), 0.0, 1e-12);
  }
}

TEST(Wootters, Examples) {
  EXPECT_NEAR(wootters_concurrence(projector({kS, 0, 0, kS})).value, 1.0, 1e-12);
  EXPECT_NEAR(wootters_concurrence(projector({1, 0, 0, 0})).value, 0.0, 1e-12);
  EXPECT_NEAR(wootters_concurrence(partial_trace_pair(dicke_state(3, 1), 1, 2)).value, 2.0 / 3.0, 1e-12);
}

// The analytic Werner value is the oracle here. rho rho~ has a triple
// eigenvalue, which coefficient-based root finding cannot resolve well.
TEST(Wootters, WernerState) {
  const auto singlet = projector({0, kS, -kS, 0});
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const ComplexMatrix rho = singlet * cplx(p) + ComplexMatrix::identity(4) * cplx((1.0 - p) / 4.0);
    const double want = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    EXPECT_NEAR(wootters_concurrence(rho).value, want, 1e-10) << p;
  }
  const ComplexMatrix half = singlet * cplx(0.5) + ComplexMatrix::identity(4) * cplx(0.125);
  EXPECT_NEAR(wootters_concurrence(half).value, 0.25, 1e-12);
}

TEST(Wootters, RejectsNonPsd) {
  std::vector<double> d{0.6, 0.5, 0.0, -0.1};
  EXPECT_THROW(wootters_concurrence(ComplexMatrix::diagonal(d)), NumericError);
  EXPECT_THROW(wootters_concurrence(ComplexMatrix(3, 3)), InputError);
}

TEST(Wootters, ResultInvariants) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto rho = random_pair_density(s, 1 + s % 4);
    const auto r = wootters_concurrence(rho);
    const auto &l = r.sqrt_eigs;
    EXPECT_GE(l[3], 0.0);
    for (int k = 0; k < 3; ++k) EXPECT_GE(l[k], l[k + 1]);
    EXPECT_EQ(r.value, std::max(l[0] - l[1] - l[2] - l[3], 0.0));
    EXPECT_GE(r.value, 0.0);
    EXPECT_LE(r.value, 1.0 + 1e-12);
    EXPECT_LE(l[0] + l[1] + l[2] + l[3], 2.0 + 1e-9);
  }
}

TEST(Wootters, MatchesQuarticOracle) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    // Full rank keeps the oracle's roots well conditioned.
    const auto rho = random_pair_density(1000 + s, 4);
    const auto r = wootters_concurrence(rho);
    const auto o = entweb::testing::quartic_sqrt_eigs(rho);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(r.sqrt_eigs[k], static_cast<double>(o[k]), 1e-8) << s;
  }
}

TEST(Wootters, LocalUnitaryInvariance) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto rng = sample_engine(32, 1, s);
    const auto rho = random_pair_density(2000 + s, 1 + s % 4);
    const ComplexMatrix uv = kron(random_unitary_2(rng), random_unitary_2(rng));
    const ComplexMatrix out = uv * rho * uv.adjoint();
    EXPECT_NEAR(wootters_concurrence(out).value, wootters_concurrence(rho).value, 1e-9);
  }
}

TEST(Wootters, ProductStatesAreSeparable) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto rng = sample_engine(33, 1, s);
    const auto a = ginibre_density(2, 1 + s % 2, rng);
    const auto b = ginibre_density(2, 1 + (s / 2) % 2, rng);
    const ComplexMatrix rho = kron({a(0, 0), a(0, 1), a(1, 0), a(1, 1)}, {b(0, 0), b(0, 1), b(1, 0), b(1, 1)});
    EXPECT_NEAR(wootters_concurrence(rho).value, 0.0, 1e-9);
  }
}

TEST(Wootters, PureStateFormula) {
  // For a pure state C = 2|ad - bc|.
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto rng = sample_engine(34, 1, s);
    std::vector<cplx> v(4);
    double norm = 0.0;
    for (auto &x : v) {
      x = complex_normal(rng);
      norm += std::norm(x);
    }
    for (auto &x : v) x /= std::sqrt(norm);
    const double want = 2.0 * std::abs(v[0] * v[3] - v[1] * v[2]);
    EXPECT_NEAR(wootters_concurrence(projector(v)).value, want, 1e-10);
  }
}
