#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "entweb/linalg.hpp"

namespace entweb {

inline constexpr int kMaxQubits = 12;

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

// Amplitudes are indexed by computational-basis strings with qubit 1 as the
// most significant bit. |1> is spin-up (s_z = +1/2), |0> is spin-down.

class PureState {
public:
  /// Throws InputError on a size mismatch or a norm off by more than 1e-12.
  PureState(int n_qubits, std::vector<cplx> amplitudes);

  /// Rescales to unit norm; throws on a zero vector.
  static PureState normalized(int n_qubits, std::vector<cplx> amplitudes);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }

private:
  int n_;
  std::vector<cplx> amps_;
};

class DensityOperator {
public:
  /// Validates Hermiticity and unit trace to 1e-12 and positivity to -1e-10.
  /// The positivity check is skipped above 8 qubits (cubic cost).
  DensityOperator(int n_qubits, ComplexMatrix matrix);

  static DensityOperator from_pure(const PureState &psi);

  int n_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix &matrix() const noexcept { return m_; }

private:
  int n_;
  ComplexMatrix m_;
};

/// Two-qubit density operator in the basis {|00>, |01>, |10>, |11>}.
class PairDensity {
public:
  explicit PairDensity(ComplexMatrix matrix);
  const ComplexMatrix &matrix() const noexcept { return m_; }

private:
  ComplexMatrix m_;
};

/// First and symmetrized second moments of the total spin S = sum_l s^(l).
struct CollectiveMoments {
  int n = 0;
  Vec3 mean_spin{};      // <S_x>, <S_y>, <S_z>
  Mat3 corr{};           // <S_mu S_nu + S_nu S_mu> / 2
  double total_spin_sq{}; // <S^2> = trace(corr)
};

struct PrincipalFrame {
  Mat3 rotation{};            // rows are the new x, y, z axes
  CollectiveMoments rotated{}; // corr diagonal with S_z^2 >= S_y^2 >= S_x^2
};

PureState basis_state(int n_qubits, std::uint32_t index);
PureState product_state(int n_qubits, cplx amp0, cplx amp1);
PureState tensor_product(const PureState &a, const PureState &b);

PureState dicke_state(int n, int n_zeros);
PureState ghz_state(int n);

PairDensity partial_trace_pair(const PureState &state, int i, int j);
PairDensity partial_trace_pair(const DensityOperator &state, int i, int j);

CollectiveMoments collective_moments(const PureState &state);
CollectiveMoments collective_moments(const DensityOperator &state);

/// Rotates moments into R's frame: mean -> R mean, corr -> R corr R^T.
CollectiveMoments rotate_moments(const CollectiveMoments &m, const Mat3 &rotation);

/// Diagonalizes the correlation tensor. Within a degenerate eigenspace
/// (eigenvalues equal to 1e-9) the axes closest to the identity are kept.
PrincipalFrame principal_axes(const CollectiveMoments &moments);

/// Applies the global SU(2) rotation U^{(x)n} whose adjoint action on the spin
/// vector is `rotation`. Throws InputError unless rotation is proper orthogonal.
PureState apply_spin_rotation(const PureState &state, const Mat3 &rotation);
DensityOperator apply_spin_rotation(const DensityOperator &state, const Mat3 &rotation);

/// Single-qubit SU(2) matrix (basis |0>, |1>) for the proper rotation.
std::array<cplx, 4> su2_from_rotation(const Mat3 &rotation);

bool is_pair_marginal_uniform(const PureState &state, double tol);
bool is_pair_marginal_uniform(const DensityOperator &state, double tol);

/// Reorders qubits: qubit q of the output carries qubit perm[q] of the input
/// (both 0-based).
DensityOperator permute_qubits(const DensityOperator &rho, std::span<const int> perm);

/// Average of rho over all n! qubit permutations, summed in lexicographic
/// permutation order. Limited to n <= 8.
DensityOperator permutation_twirl(const DensityOperator &rho);

/// Moves qubit l to position l+1 (cyclically).
PureState cyclic_shift(const PureState &state);

/// Orbits of n-bit strings under cyclic rotation, ordered by their smallest
/// member; each orbit is listed in ascending order.
std::vector<std::vector<std::uint32_t>> necklace_orbits(int n_bits);

/// Translation-invariant state on a ring of 2*half_n qubits: coeffs[k] weights
/// the uniform superposition over orbit k of necklace_orbits(2*half_n).
PureState ring_translation_state(int half_n, std::span<const cplx> coeffs);

} // namespace entweb
