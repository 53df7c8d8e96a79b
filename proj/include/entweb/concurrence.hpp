#pragma once

#include <array>

#include "entweb/linalg.hpp"
#include "entweb/qstate.hpp"

namespace entweb {

struct ConcurrenceResult {
  double value = 0.0;
  std::array<double, 4> sqrt_eigs{}; // l_1 >= l_2 >= l_3 >= l_4 >= 0
};

/// rho~ = (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
ComplexMatrix spin_flip(const ComplexMatrix &rho);

/// Wootters concurrence, with l_i taken from the Hermitian form
/// sqrt(rho) rho~ sqrt(rho), whose spectrum equals that of rho rho~.
ConcurrenceResult wootters_concurrence(const PairDensity &rho);
ConcurrenceResult wootters_concurrence(const ComplexMatrix &rho);

} // namespace entweb
