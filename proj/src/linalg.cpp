#include "entweb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "entweb/error.hpp"

namespace entweb {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : ComplexMatrix(rows, cols, std::vector<cplx>(rows * cols)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw InputError("matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw InputError("matrix entry count " + std::to_string(data_.size()) + " does not match " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  ComplexMatrix m(ket.size(), bra.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(*this);
  for (auto &v : out.data_) v = std::conj(v);
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("shape mismatch in matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("shape mismatch in matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
  for (auto &v : data_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) throw InputError("shape mismatch in matrix product");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("shape mismatch in comparison");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) worst = std::max(worst, std::abs(ea[i] - eb[i]));
  return worst;
}

double hermiticity_defect(const ComplexMatrix &m) {
  if (!m.is_square()) throw InputError("Hermiticity is only defined for square matrices");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c) worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

namespace {

double max_modulus(const ComplexMatrix &m) {
  double worst = 0.0;
  for (const auto &v : m.entries()) worst = std::max(worst, std::abs(v));
  return worst;
}

double off_diagonal_norm2(const ComplexMatrix &a) {
  double off = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) off += std::norm(a(p, q));
  return off;
}

// Applies A <- G^dagger A G and V <- V G for the 2x2 unitary G acting on (p, q).
void rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q, const std::array<cplx, 4> &g) {
  const auto [gpp, gpq, gqp, gqq] = g;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = akp * gpp + akq * gqp;
    a(k, q) = akp * gpq + akq * gqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = vkp * gpp + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * gqq;
  }
}

} // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix &m, double tol) {
  if (!m.is_square()) throw InputError("hermitian_eig: matrix is not square");
  const double scale = std::max(1.0, max_modulus(m));
  if (hermiticity_defect(m) > tol * scale) throw InputError("hermitian_eig: matrix is not Hermitian within tolerance");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
    a(i, i) = a(i, i).real();
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double frob2 = 0.0;
  for (const auto &x : a.entries()) frob2 += std::norm(x);
  const double stop = 1e-32 * frob2;

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off_diagonal_norm2(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0 || mag * mag <= 1e-36 * frob2) continue;
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx cph = std::conj(phase);
        rotate(a, v, p, q, {cplx(c), cplx(s), -s * cph, c * cph});
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol_clip) {
  const auto eig = hermitian_eig(m);
  const std::size_t n = m.rows();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ev = eig.eigenvalues[k];
    if (ev < -tol_clip) throw NumericError("psd_sqrt: eigenvalue " + std::to_string(ev) + " is negative");
    roots[k] = ev > 0.0 ? std::sqrt(ev) : 0.0;
  }
  const auto &v = eig.eigenvectors;
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * roots[k] * std::conj(v(j, k));
      out(i, j) = acc;
    }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix &m) {
  // Orthogonalize the columns; their norms are then the singular values.
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  ComplexMatrix a = m;
  auto column_dot = [&](std::size_t p, std::size_t q) {
    cplx acc = 0.0;
    for (std::size_t r = 0; r < rows; ++r) acc += std::conj(a(r, p)) * a(r, q);
    return acc;
  };
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double alpha = column_dot(p, p).real();
        const double beta = column_dot(q, q).real();
        const cplx g = column_dot(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0 || mag <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase = g / mag;
        const double zeta = (beta - alpha) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const cplx ap = a(r, p);
          const cplx aq = a(r, q) * std::conj(phase);
          a(r, p) = c * ap - s * aq;
          a(r, q) = s * ap + c * aq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> out(cols);
  for (std::size_t k = 0; k < cols; ++k) out[k] = std::sqrt(column_dot(k, k).real());
  std::sort(out.begin(), out.end(), std::greater<>());
  if (rows < cols) out.resize(rows);
  return out;
}

bool is_psd(const ComplexMatrix &m, double tol) {
  if (!m.is_square()) throw InputError("is_psd: matrix is not square");
  const std::size_t n = m.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j).real() + tol;
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx acc = m(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
      l(i, j) = acc / ljj;
    }
  }
  return true;
}

std::array<double, 3> cubic_roots_real(double c2, double c1, double c0) {
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  const double scale = std::max({1.0, std::abs(c2), std::sqrt(std::abs(c1)), std::cbrt(std::abs(c0))});
  const double scale2 = scale * scale;
  const double scale6 = scale2 * scale2 * scale2;

  // Discriminant of the depressed cubic; non-negative for three real roots.
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  if (disc < -1e-12 * scale6) {
    throw NumericError("cubic_roots_real: cubic has complex roots (discriminant " + std::to_string(disc) + ")");
  }

  std::array<double, 3> roots{};
  if (p > -1e-14 * scale2) {
    const double u = std::cbrt(-q);
    roots = {u - shift, u - shift, u - shift};
  } else {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    constexpr double third = 2.0 * std::numbers::pi / 3.0;
    for (int k = 0; k < 3; ++k) roots[k] = m * std::cos(theta - third * k) - shift;
  }

  auto poly = [&](double t) { return ((t + c2) * t + c1) * t + c0; };
  for (auto &t : roots) {
    const double f = poly(t);
    const double df = (3.0 * t + 2.0 * c2) * t + c1;
    if (df == 0.0) continue;
    const double polished = t - f / df;
    if (std::abs(poly(polished)) < std::abs(f)) t = polished;
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

} // namespace entweb
