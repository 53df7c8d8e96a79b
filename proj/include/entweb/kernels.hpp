#pragma once

// Data-parallel inner loops with a scalar reference implementation and an
// AVX2/FMA variant. `active_isa()` picks the variant at runtime from CPUID;
// setting ENTWEB_KERNEL=scalar forces the reference path.

#include <array>
#include <cstddef>
#include <span>

#include "entweb/linalg.hpp"

namespace entweb::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
bool isa_available(Isa isa);
const char *isa_name(Isa isa);

/// Constant data for the 3x3 triplet block of the symmetric-family marginal,
/// scaled by N:  T = [[a_x, m_z, -i m_y], [m_z, a_y, m_x], [i m_y, m_x, a_z]]
/// with m = (sqrt X, sqrt Y, sqrt Z). The spin-flipped block is
/// Q conj(T) Q^dagger.
struct TripletBlock {
  std::array<double, 3> a{};
  std::array<cplx, 9> flip{}; // Q, row-major
};

/// Coefficients of det(t - T T~) = t^3 + c2 t^2 + c1 t + c0 for each point.
/// All spans must have equal length.
void triplet_charpoly(Isa isa, const TripletBlock &block, std::span<const double> x, std::span<const double> y,
                      std::span<const double> z, std::span<double> c2, std::span<double> c1, std::span<double> c0);

inline void triplet_charpoly(const TripletBlock &block, std::span<const double> x, std::span<const double> y,
                             std::span<const double> z, std::span<double> c2, std::span<double> c1,
                             std::span<double> c0) {
  triplet_charpoly(active_isa(), block, x, y, z, c2, c1, c0);
}

/// out = G G^dagger for row-major G (rows x cols); out is rows x rows.
void hermitian_gram(Isa isa, std::span<const cplx> g, std::size_t rows, std::size_t cols, std::span<cplx> out);

inline void hermitian_gram(std::span<const cplx> g, std::size_t rows, std::size_t cols, std::span<cplx> out) {
  hermitian_gram(active_isa(), g, rows, cols, out);
}

namespace detail {
void triplet_charpoly_scalar(const TripletBlock &block, const double *x, const double *y, const double *z,
                             double *c2, double *c1, double *c0, std::size_t count);
void hermitian_gram_scalar(const cplx *g, std::size_t rows, std::size_t cols, cplx *out);
#if defined(__x86_64__) || defined(_M_X64)
void triplet_charpoly_avx2(const TripletBlock &block, const double *x, const double *y, const double *z,
                           double *c2, double *c1, double *c0, std::size_t count);
void hermitian_gram_avx2(const cplx *g, std::size_t rows, std::size_t cols, cplx *out);
#endif
} // namespace detail

} // namespace entweb::kernels
