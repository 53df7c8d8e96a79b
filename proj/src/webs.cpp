#include "entweb/webs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entweb/concurrence.hpp"
#include "entweb/error.hpp"
#include "entweb/parallel.hpp"
#include "entweb/random.hpp"

namespace entweb {

WebReport w_state_concurrence(int n) {
  if (n < 2 || n > kMaxQubits) throw InputError("W state size must be in 2..12");
  WebReport r;
  r.kind = WebKind::w_state;
  r.size = n;
  r.concurrence = wootters_concurrence(partial_trace_pair(dicke_state(n, 1), 1, 2)).value;
  r.reference_value = 2.0 / n;
  r.reached = std::abs(r.concurrence - r.reference_value) <= 1e-10;
  r.pipeline = "dicke_state(N,1) -> partial trace to qubits (1,2) -> Wootters";
  return r;
}

Fraction ring_formula_exact(int half_n) {
  if (half_n < 2) throw InputError("ring_formula needs half_n >= 2");
  if (half_n > 61) throw InputError("ring_formula_exact overflows beyond half_n = 61");
  const std::uint64_t num = 2 + (std::uint64_t{1} << (half_n - 2));
  const std::uint64_t den = 2 + (std::uint64_t{1} << half_n);
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

double ring_formula(int half_n) {
  if (half_n < 2) throw InputError("ring_formula needs half_n >= 2");
  if (half_n <= 61) return ring_formula_exact(half_n).value();
  // (2 + 2^(N-2)) / (2 + 2^N) = (1/4 + 2^(1-N)) / (1 + 2^(1-N))
  const double u = std::ldexp(1.0, 1 - half_n);
  return (0.25 + u) / (1.0 + u);
}

double nearest_neighbour_concurrence(const PureState &state) {
  return wootters_concurrence(partial_trace_pair(state, 1, 2)).value;
}

namespace {

struct RestartResult {
  double value = -1.0;
  std::vector<double> coeffs;
};

double ring_value(int half_n, const std::vector<double> &c) {
  double norm = 0.0;
  for (double v : c) norm += v * v;
  if (norm < 1e-24) return -1.0;
  std::vector<cplx> cc(c.begin(), c.end());
  try {
    return nearest_neighbour_concurrence(
        ring_translation_state(half_n, cc));
  } catch (const NumericError &) {
    return -1.0;
  }
}

RestartResult run_restart(int half_n, std::size_t n_orbits, std::uint64_t seed, std::size_t restart, int iterations) {
  auto rng = sample_engine(seed, 0x72696e67, restart);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RestartResult r;
  r.coeffs.resize(n_orbits);
  for (auto &v : r.coeffs) v = gauss(rng);
  r.value = ring_value(half_n, r.coeffs);
  std::vector<double> step(n_orbits, 0.5);
  std::uniform_int_distribution<std::size_t> pick(0, n_orbits - 1);
  for (int it = 0; it < iterations; ++it) {
    // One sweep of coordinate moves, then a random two-coordinate move to
    // step off ridges where single coordinates stall.
    bool improved = false;
    for (std::size_t k = 0; k < n_orbits; ++k) {
      for (double sign : {1.0, -1.0}) {
        auto trial = r.coeffs;
        trial[k] += sign * step[k];
        const double v = ring_value(half_n, trial);
        if (v > r.value) {
          r.value = v;
          r.coeffs = std::move(trial);
          step[k] *= 1.5;
          improved = true;
          break;
        }
      }
      if (!improved) step[k] *= 0.7;
    }
    const std::size_t a = pick(rng);
    const std::size_t b = pick(rng);
    auto trial = r.coeffs;
    const double scale = 0.5 * (step[a] + step[b]);
    trial[a] += scale * gauss(rng);
    trial[b] += scale * gauss(rng);
    const double v = ring_value(half_n, trial);
    if (v > r.value) {
      r.value = v;
      r.coeffs = std::move(trial);
    }
    if (*std::max_element(step.begin(), step.end()) < 1e-12) break;
  }
  return r;
}

} // namespace

WebReport ring_search(int half_n, std::uint64_t seed, RingSearchOptions options) {
  if (half_n < 2 || 2 * half_n > 10) throw InputError("ring_search supports rings of 4 to 10 qubits");
  if (options.restarts < 1 || options.iterations < 0) throw InputError("ring_search budget must be positive");
  const int n_bits = 2 * half_n;
  const std::size_t n_orbits = necklace_orbits(n_bits).size();
  std::vector<RestartResult> results(static_cast<std::size_t>(options.restarts));
  parallel_for(results.size(), 1, [&](std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) results[r] = run_restart(half_n, n_orbits, seed, r, options.iterations);
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r)
    if (results[r].value > results[best].value) best = r;

  WebReport rep;
  rep.kind = WebKind::ring;
  rep.size = half_n;
  rep.reference_value = ring_formula(half_n);
  rep.coefficients = results[best].coeffs;
  double norm = 0.0;
  for (double v : rep.coefficients) norm += v * v;
  for (double &v : rep.coefficients) v /= std::sqrt(norm);
  std::vector<cplx> cc(rep.coefficients.begin(), rep.coefficients.end());
  const PureState state = ring_translation_state(half_n, cc);
  rep.concurrence = nearest_neighbour_concurrence(state);
  rep.reached = rep.concurrence >= rep.reference_value - 1e-3;

  double lo = rep.concurrence, hi = rep.concurrence;
  for (int q = 1; q <= n_bits; ++q) {
    const int next = q % n_bits + 1;
    const double c = wootters_concurrence(partial_trace_pair(state, std::min(q, next), std::max(q, next))).value;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  rep.neighbour_spread = hi - lo;
  const PureState shifted = cyclic_shift(state);
  for (std::size_t k = 0; k < state.dim(); ++k)
    rep.shift_defect = std::max(rep.shift_defect, std::abs(shifted.amplitudes()[k] - state.amplitudes()[k]));
  rep.pipeline = "real weights on necklace orbits; " + std::to_string(options.restarts) + " restarts x " +
                 std::to_string(options.iterations) + " ascent sweeps";
  return rep;
}

} // namespace entweb
