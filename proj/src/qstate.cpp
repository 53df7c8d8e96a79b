#include "entweb/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entweb/error.hpp"

namespace entweb {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw InputError("qubit count " + std::to_string(n) + " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
}

// Bit position (from the least significant end) of 1-based qubit q.
int bit_of(int n, int q) { return n - q; }

std::size_t insert_zero_bit(std::size_t x, int pos) {
  const std::size_t low = x & ((std::size_t{1} << pos) - 1);
  return ((x >> pos) << (pos + 1)) | low;
}

void check_pair(int n, int i, int j) {
  if (i < 1 || j < 1 || i > n || j > n) throw InputError("pair index out of range");
  if (i >= j) throw InputError("pair indices must satisfy i < j");
}

// Full basis index for environment `env` with local two-bit value `ab`
// (qubit i is the high bit of ab).
struct PairIndexer {
  int hi;
  int lo;
  std::size_t operator()(std::size_t env, int ab) const {
    std::size_t idx = insert_zero_bit(insert_zero_bit(env, lo), hi);
    if (ab & 2) idx |= std::size_t{1} << hi;
    if (ab & 1) idx |= std::size_t{1} << lo;
    return idx;
  }
};

// Single-qubit spin-1/2 matrix elements <row|s_mu|col>, basis |0>=down, |1>=up.
cplx spin_element(int mu, int row, int col) {
  const cplx half(0.5, 0.0);
  switch (mu) {
  case 0:
    return row != col ? half : cplx{};
  case 1:
    if (row == col) return {};
    return row == 0 ? cplx(0.0, 0.5) : cplx(0.0, -0.5);
  default:
    if (row != col) return {};
    return row == 1 ? half : -half;
  }
}

// <c| s_mu^(l) = coef <c'|, with c' the index reached from c.
struct BraStep {
  cplx coef;
  std::size_t index;
};

BraStep bra_apply(int mu, int pos, std::size_t c) {
  const int bit = static_cast<int>((c >> pos) & 1U);
  if (mu == 2) return {spin_element(2, bit, bit), c};
  return {spin_element(mu, bit, 1 - bit), c ^ (std::size_t{1} << pos)};
}

// Moments from a generic element accessor rho(r, c).
template <typename Element>
CollectiveMoments moments_from(int n, std::size_t dim, Element rho) {
  CollectiveMoments out;
  out.n = n;
  for (int mu = 0; mu < 3; ++mu) {
    double acc = 0.0;
    for (std::size_t c = 0; c < dim; ++c)
      for (int pos = 0; pos < n; ++pos) {
        const auto s = bra_apply(mu, pos, c);
        acc += (s.coef * rho(s.index, c)).real();
      }
    out.mean_spin[mu] = acc;
  }
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = mu; nu < 3; ++nu) {
      // For Hermitian rho, <S_mu S_nu + S_nu S_mu>/2 = Re <S_mu S_nu>.
      cplx acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        for (int p = 0; p < n; ++p) {
          const auto s1 = bra_apply(mu, p, c);
          for (int q = 0; q < n; ++q) {
            const auto s2 = bra_apply(nu, q, s1.index);
            acc += s1.coef * s2.coef * rho(s2.index, c);
          }
        }
      }
      const double sym = acc.real();
      out.corr[mu][nu] = sym;
      out.corr[nu][mu] = sym;
    }
  }
  out.total_spin_sq = out.corr[0][0] + out.corr[1][1] + out.corr[2][2];
  return out;
}

void check_rotation(const Mat3 &r) {
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += r[i][k] * r[j][k];
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  if (worst > 1e-9) throw InputError("rotation matrix is not orthogonal");
  const double det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
                     r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
                     r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
  if (det < 0.0) throw InputError("reflections have no SU(2) realization; relabel axes first");
}

// In-place U on every qubit of a state vector.
void apply_local_unitary(std::span<cplx> v, int n, const std::array<cplx, 4> &u) {
  for (int pos = 0; pos < n; ++pos) {
    const std::size_t mask = std::size_t{1} << pos;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k & mask) continue;
      const cplx a0 = v[k];
      const cplx a1 = v[k | mask];
      v[k] = u[0] * a0 + u[1] * a1;
      v[k | mask] = u[2] * a0 + u[3] * a1;
    }
  }
}

std::uint32_t rotate_bits(std::uint32_t b, int n) {
  const std::uint32_t mask = (n == 32) ? ~0U : ((1U << n) - 1U);
  return ((b >> 1) | ((b & 1U) << (n - 1))) & mask;
}

} // namespace

PureState::PureState(int n_qubits, std::vector<cplx> amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(n_);
  if (amps_.size() != (std::size_t{1} << n_)) throw InputError("amplitude count does not match 2^n");
  double norm2 = 0.0;
  for (const auto &a : amps_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-12) throw InputError("state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
}

PureState PureState::normalized(int n_qubits, std::vector<cplx> amplitudes) {
  double norm2 = 0.0;
  for (const auto &a : amplitudes) norm2 += std::norm(a);
  if (!(norm2 > 0.0)) throw InputError("cannot normalize a zero vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto &a : amplitudes) a *= inv;
  return PureState(n_qubits, std::move(amplitudes));
}

DensityOperator::DensityOperator(int n_qubits, ComplexMatrix matrix) : n_(n_qubits), m_(std::move(matrix)) {
  check_qubit_count(n_);
  const std::size_t d = std::size_t{1} << n_;
  if (m_.rows() != d || m_.cols() != d) throw InputError("density matrix dimension does not match 2^n");
  if (hermiticity_defect(m_) > 1e-12) throw InputError("density matrix is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > 1e-12) throw InputError("density matrix trace differs from 1");
  if (n_ <= 8 && !is_psd(m_, 1e-10)) throw NumericError("density matrix is not positive semidefinite");
}

DensityOperator DensityOperator::from_pure(const PureState &psi) {
  return DensityOperator(psi.n_qubits(), ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
}

PairDensity::PairDensity(ComplexMatrix matrix) : m_(std::move(matrix)) {
  if (m_.rows() != 4 || m_.cols() != 4) throw InputError("pair density must be 4x4");
  if (hermiticity_defect(m_) > 1e-12) throw InputError("pair density is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > 1e-12) throw InputError("pair density trace differs from 1");
  if (!is_psd(m_, 1e-10)) throw NumericError("pair density is not positive semidefinite");
}

PureState basis_state(int n_qubits, std::uint32_t index) {
  check_qubit_count(n_qubits);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  if (index >= amps.size()) throw InputError("basis index out of range");
  amps[index] = 1.0;
  return PureState(n_qubits, std::move(amps));
}

PureState product_state(int n_qubits, cplx amp0, cplx amp1) {
  check_qubit_count(n_qubits);
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  for (std::size_t k = 0; k < amps.size(); ++k) {
    cplx a = 1.0;
    for (int pos = 0; pos < n_qubits; ++pos) a *= ((k >> pos) & 1U) ? amp1 : amp0;
    amps[k] = a;
  }
  return PureState::normalized(n_qubits, std::move(amps));
}

PureState tensor_product(const PureState &a, const PureState &b) {
  const int n = a.n_qubits() + b.n_qubits();
  check_qubit_count(n);
  std::vector<cplx> amps(std::size_t{1} << n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) amps[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
  return PureState::normalized(n, std::move(amps));
}

PureState dicke_state(int n, int n_zeros) {
  check_qubit_count(n);
  if (n_zeros < 0 || n_zeros > n) throw InputError("dicke_state: number of zeros out of range");
  std::vector<cplx> amps(std::size_t{1} << n);
  std::size_t count = 0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    if (n - std::popcount(static_cast<std::uint32_t>(k)) == n_zeros) {
      amps[k] = 1.0;
      ++count;
    }
  }
  const double a = 1.0 / std::sqrt(static_cast<double>(count));
  for (auto &v : amps) v *= a;
  return PureState(n, std::move(amps));
}

PureState ghz_state(int n) {
  check_qubit_count(n);
  std::vector<cplx> amps(std::size_t{1} << n);
  amps.front() = std::sqrt(0.5);
  amps.back() = std::sqrt(0.5);
  return PureState(n, std::move(amps));
}

PairDensity partial_trace_pair(const PureState &state, int i, int j) {
  const int n = state.n_qubits();
  check_pair(n, i, j);
  const PairIndexer idx{bit_of(n, i), bit_of(n, j)};
  const std::size_t envs = std::size_t{1} << (n - 2);
  const auto psi = state.amplitudes();
  ComplexMatrix out(4, 4);
  for (std::size_t env = 0; env < envs; ++env) {
    std::array<cplx, 4> local;
    for (int ab = 0; ab < 4; ++ab) local[ab] = psi[idx(env, ab)];
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) out(a, b) += local[a] * std::conj(local[b]);
  }
  return PairDensity(std::move(out));
}

PairDensity partial_trace_pair(const DensityOperator &state, int i, int j) {
  const int n = state.n_qubits();
  check_pair(n, i, j);
  const PairIndexer idx{bit_of(n, i), bit_of(n, j)};
  const std::size_t envs = std::size_t{1} << (n - 2);
  const auto &rho = state.matrix();
  ComplexMatrix out(4, 4);
  for (std::size_t env = 0; env < envs; ++env)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) out(a, b) += rho(idx(env, a), idx(env, b));
  return PairDensity(std::move(out));
}

CollectiveMoments collective_moments(const PureState &state) {
  const auto psi = state.amplitudes();
  return moments_from(state.n_qubits(), state.dim(),
                      [&](std::size_t r, std::size_t c) { return psi[r] * std::conj(psi[c]); });
}

CollectiveMoments collective_moments(const DensityOperator &state) {
  const auto &rho = state.matrix();
  return moments_from(state.n_qubits(), state.dim(), [&](std::size_t r, std::size_t c) { return rho(r, c); });
}

CollectiveMoments rotate_moments(const CollectiveMoments &m, const Mat3 &r) {
  CollectiveMoments out;
  out.n = m.n;
  for (int a = 0; a < 3; ++a) {
    double acc = 0.0;
    for (int b = 0; b < 3; ++b) acc += r[a][b] * m.mean_spin[b];
    out.mean_spin[a] = acc;
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double acc = 0.0;
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) acc += r[a][c] * m.corr[c][d] * r[b][d];
      out.corr[a][b] = acc;
    }
  out.total_spin_sq = out.corr[0][0] + out.corr[1][1] + out.corr[2][2];
  return out;
}

namespace {

// Orthonormal vectors in span(basis) closest (orthogonal Procrustes) to the
// unit axes listed in `targets`.
std::vector<Vec3> closest_axes(const std::vector<Vec3> &basis, const std::vector<int> &targets) {
  const std::size_t k = basis.size();
  ComplexMatrix m(k, k); // m(a, b) = basis[a] . e_targets[b]
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) m(a, b) = basis[a][targets[b]];
  const ComplexMatrix mtm = m.adjoint() * m;
  const auto eig = hermitian_eig(mtm);
  if (eig.eigenvalues.back() < 1e-12) {
    // Degenerate overlap: fall back to Gram-Schmidt of the projected targets.
    std::vector<Vec3> out;
    for (std::size_t b = 0; b < k; ++b) {
      Vec3 v{};
      for (std::size_t a = 0; a < k; ++a)
        for (int c = 0; c < 3; ++c) v[c] += m(a, b).real() * basis[a][c];
      for (const auto &u : out) {
        double dot = 0.0;
        for (int c = 0; c < 3; ++c) dot += u[c] * v[c];
        for (int c = 0; c < 3; ++c) v[c] -= dot * u[c];
      }
      double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      if (norm < 1e-9) {
        // Pick any unit vector of the span orthogonal to what we have.
        for (const auto &cand : basis) {
          v = cand;
          for (const auto &u : out) {
            double dot = 0.0;
            for (int c = 0; c < 3; ++c) dot += u[c] * v[c];
            for (int c = 0; c < 3; ++c) v[c] -= dot * u[c];
          }
          norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
          if (norm > 1e-6) break;
        }
      }
      for (auto &c : v) c /= norm;
      out.push_back(v);
    }
    return out;
  }
  // Polar factor O = M (M^T M)^{-1/2}; new vectors = basis * O.
  ComplexMatrix inv_sqrt(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      cplx acc = 0.0;
      for (std::size_t e = 0; e < k; ++e)
        acc += eig.eigenvectors(i, e) * (1.0 / std::sqrt(eig.eigenvalues[e])) * std::conj(eig.eigenvectors(j, e));
      inv_sqrt(i, j) = acc;
    }
  const ComplexMatrix o = m * inv_sqrt;
  std::vector<Vec3> out(k, Vec3{});
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t a = 0; a < k; ++a)
      for (int c = 0; c < 3; ++c) out[b][c] += o(a, b).real() * basis[a][c];
  return out;
}

} // namespace

PrincipalFrame principal_axes(const CollectiveMoments &moments) {
  ComplexMatrix corr(3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) corr(a, b) = moments.corr[a][b];
  const auto eig = hermitian_eig(corr, 1e-9);

  // Descending eigenvalues go to axes z, y, x.
  std::array<Vec3, 3> vecs{};
  for (int k = 0; k < 3; ++k)
    for (int c = 0; c < 3; ++c) vecs[k][c] = eig.eigenvectors(c, k).real();
  const std::array<int, 3> slot_of = {2, 1, 0};

  Mat3 rot{};
  int k = 0;
  while (k < 3) {
    int end = k + 1;
    while (end < 3 && std::abs(eig.eigenvalues[k] - eig.eigenvalues[end]) <= 1e-9) ++end;
    std::vector<Vec3> basis(vecs.begin() + k, vecs.begin() + end);
    std::vector<int> targets;
    for (int e = k; e < end; ++e) targets.push_back(slot_of[e]);
    const auto axes = closest_axes(basis, targets);
    for (int e = k; e < end; ++e) rot[slot_of[e]] = axes[e - k];
    k = end;
  }

  const double det = rot[0][0] * (rot[1][1] * rot[2][2] - rot[1][2] * rot[2][1]) -
                     rot[0][1] * (rot[1][0] * rot[2][2] - rot[1][2] * rot[2][0]) +
                     rot[0][2] * (rot[1][0] * rot[2][1] - rot[1][1] * rot[2][0]);
  if (det < 0.0) {
    int worst = 0;
    for (int a = 1; a < 3; ++a)
      if (rot[a][a] < rot[worst][worst]) worst = a;
    for (auto &c : rot[worst]) c = -c;
  }

  return PrincipalFrame{rot, rotate_moments(moments, rot)};
}

std::array<cplx, 4> su2_from_rotation(const Mat3 &r) {
  check_rotation(r);
  // Quaternion (w, x, y, z) of the proper rotation r.
  double w, x, y, z;
  const double tr = r[0][0] + r[1][1] + r[2][2];
  if (tr > 0.0) {
    const double s = 2.0 * std::sqrt(tr + 1.0);
    w = 0.25 * s;
    x = (r[2][1] - r[1][2]) / s;
    y = (r[0][2] - r[2][0]) / s;
    z = (r[1][0] - r[0][1]) / s;
  } else if (r[0][0] > r[1][1] && r[0][0] > r[2][2]) {
    const double s = 2.0 * std::sqrt(1.0 + r[0][0] - r[1][1] - r[2][2]);
    w = (r[2][1] - r[1][2]) / s;
    x = 0.25 * s;
    y = (r[0][1] + r[1][0]) / s;
    z = (r[0][2] + r[2][0]) / s;
  } else if (r[1][1] > r[2][2]) {
    const double s = 2.0 * std::sqrt(1.0 + r[1][1] - r[0][0] - r[2][2]);
    w = (r[0][2] - r[2][0]) / s;
    x = (r[0][1] + r[1][0]) / s;
    y = 0.25 * s;
    z = (r[1][2] + r[2][1]) / s;
  } else {
    const double s = 2.0 * std::sqrt(1.0 + r[2][2] - r[0][0] - r[1][1]);
    w = (r[1][0] - r[0][1]) / s;
    x = (r[0][2] + r[2][0]) / s;
    y = (r[1][2] + r[2][1]) / s;
    z = 0.25 * s;
  }
  // U = exp(-i theta n.s) = w - i (x sx' + y sy' + z sz') with sigma' = 2 s in
  // the |0>=down, |1>=up basis.
  const cplx i(0.0, 1.0);
  return {w + i * z, -i * x + y, -i * x - y, w - i * z};
}

PureState apply_spin_rotation(const PureState &state, const Mat3 &rotation) {
  const auto u = su2_from_rotation(rotation);
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  apply_local_unitary(amps, state.n_qubits(), u);
  return PureState::normalized(state.n_qubits(), std::move(amps));
}

DensityOperator apply_spin_rotation(const DensityOperator &state, const Mat3 &rotation) {
  const auto u = su2_from_rotation(rotation);
  const std::size_t d = state.dim();
  const int n = state.n_qubits();
  auto apply_columns = [&](const ComplexMatrix &m) {
    ComplexMatrix out(d, d);
    std::vector<cplx> col(d);
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t r = 0; r < d; ++r) col[r] = m(r, c);
      apply_local_unitary(col, n, u);
      for (std::size_t r = 0; r < d; ++r) out(r, c) = col[r];
    }
    return out;
  };
  // U rho U^dagger = (U (U rho)^dagger)^dagger
  ComplexMatrix out = apply_columns(apply_columns(state.matrix()).adjoint()).adjoint();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = r; c < d; ++c) {
      const cplx avg = 0.5 * (out(r, c) + std::conj(out(c, r)));
      out(r, c) = avg;
      out(c, r) = std::conj(avg);
    }
  return DensityOperator(n, std::move(out));
}

namespace {

template <typename Tracer>
bool marginals_uniform(int n, double tol, Tracer trace) {
  if (n < 3) throw InputError("marginal uniformity needs at least three qubits");
  const auto ref = trace(1, 2);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (i == 1 && j == 2) continue;
      if (max_abs_diff(trace(i, j).matrix(), ref.matrix()) > tol) return false;
    }
  return true;
}

std::vector<std::size_t> permutation_index_map(int n, std::span<const int> perm) {
  const std::size_t d = std::size_t{1} << n;
  std::vector<std::size_t> map(d);
  for (std::size_t a = 0; a < d; ++a) {
    std::size_t src = 0;
    for (int q = 0; q < n; ++q) {
      // qubit q of the output carries qubit perm[q] of the input.
      const std::size_t bit = (a >> (n - 1 - q)) & 1U;
      src |= bit << (n - 1 - perm[q]);
    }
    map[a] = src;
  }
  return map;
}

} // namespace

bool is_pair_marginal_uniform(const PureState &state, double tol) {
  return marginals_uniform(state.n_qubits(), tol, [&](int i, int j) { return partial_trace_pair(state, i, j); });
}

bool is_pair_marginal_uniform(const DensityOperator &state, double tol) {
  return marginals_uniform(state.n_qubits(), tol, [&](int i, int j) { return partial_trace_pair(state, i, j); });
}

DensityOperator permute_qubits(const DensityOperator &rho, std::span<const int> perm) {
  const int n = rho.n_qubits();
  if (static_cast<int>(perm.size()) != n) throw InputError("permutation length differs from qubit count");
  std::vector<int> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  for (int q = 0; q < n; ++q)
    if (check[q] != q) throw InputError("not a permutation");
  const auto map = permutation_index_map(n, perm);
  const std::size_t d = rho.dim();
  ComplexMatrix out(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) out(a, b) = rho.matrix()(map[a], map[b]);
  return DensityOperator(n, std::move(out));
}

DensityOperator permutation_twirl(const DensityOperator &rho) {
  const int n = rho.n_qubits();
  if (n > 8) throw InputError("permutation_twirl is limited to 8 qubits");
  const std::size_t d = rho.dim();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  ComplexMatrix acc(d, d);
  std::size_t count = 0;
  const auto &m = rho.matrix();
  do {
    const auto map = permutation_index_map(n, perm);
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t ra = map[a];
      for (std::size_t b = 0; b < d; ++b) acc(a, b) += m(ra, map[b]);
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  acc *= cplx(1.0 / static_cast<double>(count));
  return DensityOperator(n, std::move(acc));
}

PureState cyclic_shift(const PureState &state) {
  const int n = state.n_qubits();
  std::vector<cplx> out(state.dim());
  // Qubit l moves to l+1: its bit shifts one position toward the LSB, and
  // qubit n (the LSB) wraps to qubit 1 (the MSB).
  for (std::size_t k = 0; k < state.dim(); ++k) out[rotate_bits(static_cast<std::uint32_t>(k), n)] = state.amplitudes()[k];
  return PureState(n, std::move(out));
}

std::vector<std::vector<std::uint32_t>> necklace_orbits(int n_bits) {
  if (n_bits < 1 || n_bits > kMaxQubits) throw InputError("necklace size out of range");
  const std::uint32_t d = 1U << n_bits;
  std::vector<char> seen(d, 0);
  std::vector<std::vector<std::uint32_t>> orbits;
  for (std::uint32_t b = 0; b < d; ++b) {
    if (seen[b]) continue;
    std::vector<std::uint32_t> orbit;
    std::uint32_t c = b;
    do {
      if (!seen[c]) {
        seen[c] = 1;
        orbit.push_back(c);
      }
      c = rotate_bits(c, n_bits);
    } while (c != b);
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

PureState ring_translation_state(int half_n, std::span<const cplx> coeffs) {
  if (half_n < 1 || 2 * half_n > kMaxQubits) throw InputError("ring size exceeds the qubit limit");
  const int n = 2 * half_n;
  const auto orbits = necklace_orbits(n);
  if (coeffs.size() != orbits.size()) {
    throw InputError("expected " + std::to_string(orbits.size()) + " orbit coefficients, got " +
                     std::to_string(coeffs.size()));
  }
  std::vector<cplx> amps(std::size_t{1} << n);
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const cplx a = coeffs[k] / std::sqrt(static_cast<double>(orbits[k].size()));
    for (auto b : orbits[k]) amps[b] = a;
  }
  return PureState::normalized(n, std::move(amps));
}

} // namespace entweb
