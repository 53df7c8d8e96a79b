#pragma once

// Independent reference computations used only by the tests. They share no
// code with the library routines they check.

#include <array>

#include "entweb/linalg.hpp"
#include "entweb/symmetric_family.hpp"

namespace entweb::testing {

/// Square roots of the eigenvalues of rho * rho~, descending, from the
/// characteristic polynomial of the 4x4 product in long double.
std::array<long double, 4> quartic_sqrt_eigs(const ComplexMatrix &rho);

/// max(l1 - l2 - l3 - l4, 0) from quartic_sqrt_eigs.
double quartic_concurrence(const ComplexMatrix &rho);

/// Pair marginal by direct index contraction over every other qubit.
/// Qubits are 1-based with qubit 1 the most significant bit.
ComplexMatrix brute_partial_trace(const ComplexMatrix &rho, int n, int i, int j);

/// Triplet spectrum of the family marginal from the quartic oracle: the
/// eigenvalue (A_0/N)^2 is removed and the rest rescaled by N.
std::array<long double, 3> triplet_lambdas_oracle(const FamilyParams &params, const RegionPoint &point);

long double gamma_oracle(const FamilyParams &params, const RegionPoint &point);

} // namespace entweb::testing
