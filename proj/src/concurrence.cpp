#include "entweb/concurrence.hpp"

#include <algorithm>
#include <cmath>

#include "entweb/error.hpp"

namespace entweb {

ComplexMatrix spin_flip(const ComplexMatrix &rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InputError("spin_flip expects a 4x4 matrix");
  // sigma_y x sigma_y is the anti-diagonal (-1, 1, 1, -1); conjugation by it
  // maps entry (a, b) to (3-a, 3-b) with sign s_a s_b.
  static constexpr std::array<double, 4> sign = {-1.0, 1.0, 1.0, -1.0};
  ComplexMatrix out(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) out(a, b) = sign[a] * sign[b] * std::conj(rho(3 - a, 3 - b));
  return out;
}

ConcurrenceResult wootters_concurrence(const PairDensity &rho) { return wootters_concurrence(rho.matrix()); }

ConcurrenceResult wootters_concurrence(const ComplexMatrix &rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InputError("concurrence expects a 4x4 matrix");
  const auto eig = hermitian_eig(rho, 1e-10);
  // Eigenvalues that are zero up to rounding are set to exactly zero, so the
  // square root does not turn 1e-17 noise into 3e-9 weight.
  const double snap = 1e-14 * std::max(1.0, eig.eigenvalues[0]);
  std::array<double, 4> root{};
  for (int k = 0; k < 4; ++k) {
    const double ev = eig.eigenvalues[k];
    if (ev < -1e-10) throw NumericError("concurrence: input has eigenvalue " + std::to_string(ev));
    root[k] = ev > snap ? std::sqrt(ev) : 0.0;
  }
  const auto &v = eig.eigenvectors;
  ComplexMatrix sqrt_rho(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += v(i, k) * root[k] * std::conj(v(j, k));
      sqrt_rho(i, j) = acc;
    }
  // Z = sqrt(rho) (sigma_y x sigma_y) sqrt(rho)* has Z Z^dagger = sqrt(rho) rho~ sqrt(rho),
  // so the l_i are its singular values, obtained without squaring.
  ComplexMatrix flipped(4, 4);
  static constexpr std::array<double, 4> sign = {-1.0, 1.0, 1.0, -1.0};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) flipped(a, b) = sign[a] * std::conj(sqrt_rho(3 - a, b));
  const auto sv = singular_values(sqrt_rho * flipped);

  ConcurrenceResult out;
  std::copy(sv.begin(), sv.end(), out.sqrt_eigs.begin());
  const auto &l = out.sqrt_eigs;
  out.value = std::max(l[0] - l[1] - l[2] - l[3], 0.0);
  return out;
}

} // namespace entweb
