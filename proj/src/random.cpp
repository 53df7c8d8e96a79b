#include "entweb/random.hpp"

#include <cmath>

#include "entweb/error.hpp"
#include "entweb/kernels.hpp"

namespace entweb {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return std::mt19937_64(stream_seed(seed, stream, index));
}

cplx complex_normal(std::mt19937_64 &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double re = gauss(rng);
  const double im = gauss(rng);
  return {re, im};
}

ComplexMatrix ginibre_density(std::size_t dim, std::size_t rank, std::mt19937_64 &rng) {
  if (dim == 0 || rank == 0) throw InputError("ginibre_density: dimension and rank must be positive");
  std::vector<cplx> g(dim * rank);
  for (auto &v : g) v = complex_normal(rng);
  ComplexMatrix rho(dim, dim);
  kernels::hermitian_gram(g, dim, rank, rho.entries());
  const double tr = rho.trace().real();
  rho *= cplx(1.0 / tr);
  for (std::size_t r = 0; r < dim; ++r) {
    rho(r, r) = rho(r, r).real();
    for (std::size_t c = r + 1; c < dim; ++c) rho(c, r) = std::conj(rho(r, c));
  }
  return rho;
}

PureState random_symmetric_pure(int n, std::mt19937_64 &rng) {
  std::vector<cplx> amps(std::size_t{1} << n);
  for (int k = 0; k <= n; ++k) {
    const cplx w = complex_normal(rng);
    const PureState d = dicke_state(n, k);
    const auto da = d.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += w * da[i];
  }
  return PureState::normalized(n, std::move(amps));
}

std::array<cplx, 4> random_unitary_2(std::mt19937_64 &rng) {
  // Unit quaternion from four Gaussians is Haar on SU(2); add a random phase.
  std::normal_distribution<double> gauss(0.0, 1.0);
  double q[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double &v : q) {
      v = gauss(rng);
      norm += v * v;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  const cplx a(q[0] / norm, q[1] / norm);
  const cplx b(q[2] / norm, q[3] / norm);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const cplx phase = std::polar(1.0, angle(rng));
  return {phase * a, phase * b, -phase * std::conj(b), phase * std::conj(a)};
}

Mat3 random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double q[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double &v : q) {
      v = gauss(rng);
      norm += v * v;
    }
  } while (norm < 1e-12);
  norm = std::sqrt(norm);
  const double w = q[0] / norm, x = q[1] / norm, y = q[2] / norm, z = q[3] / norm;
  return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
           {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
           {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

} // namespace entweb
