#pragma once

// Counter-based seeding: every sample draws from its own engine seeded by
// (seed, stream, index), so results do not depend on evaluation order.

#include <cstdint>
#include <random>

#include "entweb/qstate.hpp"

namespace entweb {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for sample `index` of logical stream `stream`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

cplx complex_normal(std::mt19937_64 &rng);

/// G G^dagger / tr for a dim x rank complex Ginibre matrix G.
ComplexMatrix ginibre_density(std::size_t dim, std::size_t rank, std::mt19937_64 &rng);

/// Random state in the symmetric subspace: complex Gaussian weights on the
/// Dicke basis, normalized.
PureState random_symmetric_pure(int n, std::mt19937_64 &rng);

/// Haar-random single-qubit unitary (basis |0>, |1>), row-major.
std::array<cplx, 4> random_unitary_2(std::mt19937_64 &rng);

/// Uniformly random proper rotation.
Mat3 random_rotation(std::mt19937_64 &rng);

} // namespace entweb
