#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "entweb/error.hpp"
#include "entweb/linalg.hpp"
#include "entweb/random.hpp"

using namespace entweb;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      const cplx v = complex_normal(rng);
      m(r, c) = r == c ? cplx(v.real(), 0.0) : v;
      m(c, r) = std::conj(m(r, c));
    }
  return m;
}

ComplexMatrix reconstruct(const EigenDecomposition &e) {
  const ComplexMatrix lam = ComplexMatrix::diagonal(e.eigenvalues);
  return e.eigenvectors * lam * e.eigenvectors.adjoint();
}

} // namespace

TEST(ComplexMatrix, ShapeChecks) {
  EXPECT_THROW(ComplexMatrix(0, 2), InputError);
  EXPECT_THROW(ComplexMatrix(2, 2, std::vector<cplx>(3)), InputError);
  EXPECT_THROW(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), InputError);
  const ComplexMatrix m(2, 3);
  EXPECT_EQ(m.entries().size(), 6u);
}

TEST(ComplexMatrix, ArithmeticAndAdjoint) {
  ComplexMatrix a(2, 2, {cplx(1, 1), 2, 3, cplx(0, -1)});
  const ComplexMatrix id = ComplexMatrix::identity(2);
  EXPECT_EQ(max_abs_diff(a * id, a), 0.0);
  EXPECT_EQ(a.adjoint()(0, 1), cplx(3, 0));
  EXPECT_EQ(a.adjoint()(0, 0), cplx(1, -1));
  EXPECT_EQ(a.trace(), cplx(1, 0));
  EXPECT_DOUBLE_EQ(hermiticity_defect(id), 0.0);
  EXPECT_GT(hermiticity_defect(a), 0.0);
}

TEST(HermitianEig, Examples) {
  auto e = hermitian_eig(ComplexMatrix::identity(2));
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues[1], 1.0, 1e-15);

  e = hermitian_eig(ComplexMatrix(2, 2, {0, 1, 1, 0}));
  EXPECT_NEAR(e.eigenvalues[0], 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues[1], -1.0, 1e-15);

  const std::vector<double> d{0, 3, 0, 1};
  e = hermitian_eig(ComplexMatrix::diagonal(d));
  const std::vector<double> want{3, 1, 0, 0};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(e.eigenvalues[k], want[k], 1e-15);
}

TEST(HermitianEig, Errors) {
  EXPECT_THROW(hermitian_eig(ComplexMatrix(2, 3)), InputError);
  EXPECT_THROW(hermitian_eig(ComplexMatrix(2, 2, {0, 1, 2, 0}), 1e-12), InputError);
}

TEST(HermitianEig, RandomReconstruction) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto rng = sample_engine(11, 1, s);
    const std::size_t n = 2 + s % 7;
    const ComplexMatrix m = random_hermitian(n, rng);
    const auto e = hermitian_eig(m);
    EXPECT_LT(max_abs_diff(reconstruct(e), m), 1e-10);
    EXPECT_LT(max_abs_diff(e.eigenvectors.adjoint() * e.eigenvectors, ComplexMatrix::identity(n)), 1e-10);
    EXPECT_TRUE(std::is_sorted(e.eigenvalues.rbegin(), e.eigenvalues.rend()));
  }
}

TEST(PsdSqrt, Examples) {
  EXPECT_LT(max_abs_diff(psd_sqrt(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)), 1e-14);
  const std::vector<double> d{4, 9};
  const std::vector<double> r{2, 3};
  EXPECT_LT(max_abs_diff(psd_sqrt(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(r)), 1e-14);
  const ComplexMatrix plus(2, 2, {0.5, 0.5, 0.5, 0.5});
  EXPECT_LT(max_abs_diff(psd_sqrt(plus), plus), 1e-14);
}

TEST(PsdSqrt, RejectsNegative) {
  const std::vector<double> d{1, -1e-3};
  EXPECT_THROW(psd_sqrt(ComplexMatrix::diagonal(d)), NumericError);
  const std::vector<double> clip{1, -1e-12};
  EXPECT_NO_THROW(psd_sqrt(ComplexMatrix::diagonal(clip)));
}

TEST(PsdSqrt, RandomGram) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto rng = sample_engine(12, 1, s);
    const std::size_t n = 2 + s % 5;
    ComplexMatrix g(n, n);
    for (auto &v : g.entries()) v = complex_normal(rng);
    const ComplexMatrix m = g.adjoint() * g;
    const ComplexMatrix r = psd_sqrt(m);
    EXPECT_LT(max_abs_diff(r * r, m), 1e-9);
    EXPECT_LT(hermiticity_defect(r), 1e-12);
  }
}

TEST(SingularValues, MatchEigenvaluesOfGram) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto rng = sample_engine(13, 1, s);
    ComplexMatrix g(4, 4);
    for (auto &v : g.entries()) v = complex_normal(rng);
    const auto sv = singular_values(g);
    const auto e = hermitian_eig(g * g.adjoint(), 1e-9);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(sv[k] * sv[k], e.eigenvalues[k], 1e-9);
  }
}

TEST(SingularValues, RankDeficientKeepsAbsoluteAccuracy) {
  const std::vector<cplx> u{cplx(1, 2), 3, cplx(0, -1), 1};
  const ComplexMatrix m = ComplexMatrix::outer(u, u);
  const auto sv = singular_values(m);
  EXPECT_NEAR(sv[0], 16.0, 1e-13);
  for (int k = 1; k < 4; ++k) EXPECT_LT(sv[k], 1e-14);
}

TEST(IsPsd, Basic) {
  const std::vector<double> good{1, 0};
  const std::vector<double> bad{1, -1e-6};
  EXPECT_TRUE(is_psd(ComplexMatrix::diagonal(good), 1e-10));
  EXPECT_FALSE(is_psd(ComplexMatrix::diagonal(bad), 1e-10));
}

TEST(CubicRoots, Examples) {
  auto r = cubic_roots_real(-6, 11, -6);
  EXPECT_NEAR(r[0], 3, 1e-12);
  EXPECT_NEAR(r[1], 2, 1e-12);
  EXPECT_NEAR(r[2], 1, 1e-12);
  r = cubic_roots_real(0, 0, 0);
  for (double v : r) EXPECT_EQ(v, 0.0);
  // (t-4)^2 t = t^3 - 8t^2 + 16t.
  r = cubic_roots_real(-8, 16, 0);
  EXPECT_NEAR(r[0], 4, 1e-7);
  EXPECT_NEAR(r[1], 4, 1e-7);
  EXPECT_NEAR(r[2], 0, 1e-12);
  for (double t : r) EXPECT_LT(std::abs(((t - 8) * t + 16) * t), 1e-12);
}

TEST(CubicRoots, ComplexRootsThrow) {
  // t^3 + t has roots 0, +-i.
  EXPECT_THROW(cubic_roots_real(0, 1, 0), NumericError);
}

TEST(CubicRoots, RecoversRandomRoots) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 500; ++k) {
    std::array<double, 3> want{u(rng), u(rng), u(rng)};
    std::sort(want.begin(), want.end(), std::greater<>());
    const double c2 = -(want[0] + want[1] + want[2]);
    const double c1 = want[0] * want[1] + want[0] * want[2] + want[1] * want[2];
    const double c0 = -want[0] * want[1] * want[2];
    const auto got = cubic_roots_real(c2, c1, c0);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
  }
}
