#pragma once

// Named targets: the W state, which saturates 2/N, and translation-invariant
// rings whose nearest-neighbour concurrence is compared with a closed formula.

#include <cstdint>
#include <string>
#include <vector>

#include "entweb/qstate.hpp"

namespace entweb {

enum class WebKind { w_state, ring };

struct WebReport {
  WebKind kind = WebKind::w_state;
  int size = 0; // N for the W state, half_n for a ring of 2*half_n qubits
  double concurrence = 0.0;
  double reference_value = 0.0;
  std::string pipeline;
  bool reached = false;              // ring: search came within 1e-3 of the formula
  double neighbour_spread = 0.0;     // ring: max - min over all nearest-neighbour pairs
  double shift_defect = 0.0;         // ring: distance to the cyclic shift of the state
  std::vector<double> coefficients;  // ring: best real orbit weights
};

/// dicke_state(N, 1) -> pair (1, 2) marginal -> Wootters.
WebReport w_state_concurrence(int n);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// (2 + 2^(N-2)) / (2 + 2^N) for a loop of 2N qubits, reduced. Exact up to
/// half_n = 61.
Fraction ring_formula_exact(int half_n);
double ring_formula(int half_n);

/// Nearest-neighbour concurrence of the (1, 2) pair.
double nearest_neighbour_concurrence(const PureState &state);

struct RingSearchOptions {
  int restarts = 64;
  int iterations = 500;
};

/// Random restarts plus coordinate ascent over real weights on the necklace
/// orbits of 2*half_n bits. Restarts are independent streams of `seed`; the
/// best restart wins, ties to the lowest index.
WebReport ring_search(int half_n, std::uint64_t seed, RingSearchOptions options = {});

} // namespace entweb
