#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <vector>

#include "entweb/kernels.hpp"
#include "entweb/parallel.hpp"
#include "entweb/random.hpp"
#include "entweb/symmetric_family.hpp"
#include "support/draws.hpp"

using namespace entweb;
using kernels::Isa;

namespace {

struct Batch {
  std::vector<double> x, y, z;
};

Batch random_batch(const FamilyParams &p, std::size_t count, std::uint64_t seed) {
  Batch b;
  for (std::size_t k = 0; k < count; ++k) {
    auto rng = sample_engine(seed, 7, k);
    const auto pt = entweb::testing::random_physical_point(p, rng);
    b.x.push_back(pt.x);
    b.y.push_back(pt.y);
    b.z.push_back(pt.z);
  }
  return b;
}

} // namespace

TEST(Kernels, IsaReporting) {
  EXPECT_TRUE(kernels::isa_available(Isa::scalar));
  EXPECT_STREQ(kernels::isa_name(Isa::scalar), "scalar");
  EXPECT_STREQ(kernels::isa_name(Isa::avx2), "avx2");
  if (!kernels::isa_available(Isa::avx2)) { EXPECT_EQ(kernels::active_isa(), Isa::scalar); }
}

TEST(Kernels, CharpolyScalarMatchesAvx2) {
  if (!kernels::isa_available(Isa::avx2)) GTEST_SKIP() << "no AVX2 on this machine";
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto rng = sample_engine(71, 1, s);
    const auto p = entweb::testing::random_physical_params(3 + s % 8, rng);
    const auto block = triplet_block(p);
    // Odd counts exercise the vector tail.
    const std::size_t count = 1 + 37 * (s % 5);
    const auto b = random_batch(p, count, s);
    std::vector<double> s2(count), s1(count), s0(count), v2(count), v1(count), v0(count);
    kernels::triplet_charpoly(Isa::scalar, block, b.x, b.y, b.z, s2, s1, s0);
    kernels::triplet_charpoly(Isa::avx2, block, b.x, b.y, b.z, v2, v1, v0);
    for (std::size_t k = 0; k < count; ++k) {
      EXPECT_NEAR(s2[k], v2[k], 1e-12 * std::max(1.0, std::abs(s2[k])));
      EXPECT_NEAR(s1[k], v1[k], 1e-12 * std::max(1.0, std::abs(s1[k])));
      EXPECT_NEAR(s0[k], v0[k], 1e-12 * std::max(1.0, std::abs(s0[k])));
    }
  }
}

TEST(Kernels, CharpolyMatchesFamilyRelations) {
  // Roots of the charpoly are lambda^2, so c2 = -f_0 and c0 = -f_A^2.
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto rng = sample_engine(72, 1, s);
    const auto p = entweb::testing::random_physical_params(3 + s % 8, rng);
    const auto block = triplet_block(p);
    const auto b = random_batch(p, 16, 100 + s);
    for (Isa isa : {Isa::scalar, Isa::avx2}) {
      if (!kernels::isa_available(isa)) continue;
      std::vector<double> c2(16), c1(16), c0(16);
      kernels::triplet_charpoly(isa, block, b.x, b.y, b.z, c2, c1, c0);
      for (std::size_t k = 0; k < 16; ++k) {
        const RegionPoint pt{b.x[k], b.y[k], b.z[k]};
        const double f0 = f_0(p, pt);
        const double fa = f_A(p, pt);
        const double fb = f_B(p, pt);
        EXPECT_NEAR(c2[k], -f0, 1e-10 * std::max(1.0, f0));
        EXPECT_NEAR(c1[k], (f0 * f0 - fb) / 4.0, 1e-9 * std::max(1.0, f0 * f0));
        EXPECT_NEAR(c0[k], -fa * fa, 1e-10 * std::max(1.0, f0 * f0 * f0));
      }
    }
  }
}

TEST(Kernels, GramScalarMatchesAvx2) {
  if (!kernels::isa_available(Isa::avx2)) GTEST_SKIP() << "no AVX2 on this machine";
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto rng = sample_engine(73, 1, s);
    const std::size_t rows = 1 + s % 9, cols = 1 + (3 * s) % 11;
    std::vector<cplx> g(rows * cols);
    for (auto &v : g) v = complex_normal(rng);
    std::vector<cplx> a(rows * rows), b(rows * rows);
    kernels::hermitian_gram(Isa::scalar, g, rows, cols, a);
    kernels::hermitian_gram(Isa::avx2, g, rows, cols, b);
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LT(std::abs(a[k] - b[k]), 1e-12);
    // Reference: G G^dagger.
    ComplexMatrix gm(rows, cols, g);
    const ComplexMatrix ref = gm * gm.adjoint();
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < rows; ++c) EXPECT_LT(std::abs(a[r * rows + c] - ref(r, c)), 1e-12);
  }
}

TEST(Kernels, SpanLengthMismatchThrows) {
  const auto p = family_from_weights(3, {1, 1, 0.5}, 0.5);
  std::vector<double> x(3), y(3), z(2), c(3);
  EXPECT_ANY_THROW(kernels::triplet_charpoly(Isa::scalar, triplet_block(p), x, y, z, c, c, c));
}

TEST(Random, StreamsAreIndependentAndStable) {
  EXPECT_EQ(stream_seed(1, 2, 3), stream_seed(1, 2, 3));
  EXPECT_NE(stream_seed(1, 2, 3), stream_seed(1, 2, 4));
  EXPECT_NE(stream_seed(1, 2, 3), stream_seed(1, 3, 3));
  auto a = sample_engine(5, 1, 9);
  auto b = sample_engine(5, 1, 9);
  EXPECT_EQ(a(), b());
}

TEST(Random, GinibreIsDensity) {
  for (std::size_t rank = 1; rank <= 4; ++rank) {
    auto rng = sample_engine(74, 1, rank);
    const auto m = ginibre_density(4, rank, rng);
    EXPECT_NEAR(std::abs(m.trace() - 1.0), 0.0, 1e-14);
    EXPECT_LT(hermiticity_defect(m), 1e-15);
    EXPECT_TRUE(is_psd(m, 1e-12));
  }
}

TEST(Random, RotationIsProper) {
  auto rng = sample_engine(75, 1, 0);
  for (int k = 0; k < 20; ++k) {
    const Mat3 r = random_rotation(rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double dot = 0;
        for (int l = 0; l < 3; ++l) dot += r[i][l] * r[j][l];
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12);
      }
  }
}

TEST(Parallel, CoversRangeAndRethrows) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 7, [&](std::size_t b, std::size_t e) {
    for (std::size_t k = b; k < e; ++k) hits[k]++;
  });
  for (auto &h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 1,
                            [](std::size_t b, std::size_t) {
                              if (b == 5) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  EXPECT_GE(worker_count(), 1u);
}
