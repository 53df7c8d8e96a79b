#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace entweb {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Sized for the small problems in this
/// library (pair marginals, spin tensors) up to full 2^12-dimensional states.
class ComplexMatrix {
public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> entries() noexcept { return data_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;

  ComplexMatrix &operator+=(const ComplexMatrix &rhs);
  ComplexMatrix &operator-=(const ComplexMatrix &rhs);
  ComplexMatrix &operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, cplx s) { return m *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest modulus of M - M^dagger.
double hermiticity_defect(const ComplexMatrix &m);

struct EigenDecomposition {
  std::vector<double> eigenvalues; // descending
  ComplexMatrix eigenvectors;      // column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix. Throws InputError on a
/// non-square input or a Hermiticity defect above tol.
EigenDecomposition hermitian_eig(const ComplexMatrix &m, double tol = 1e-12);

/// Principal square root of a PSD Hermitian matrix. Eigenvalues in
/// [-tol_clip, 0) are clipped to zero; anything more negative throws
/// NumericError.
ComplexMatrix psd_sqrt(const ComplexMatrix &m, double tol_clip = 1e-10);

/// Singular values, descending, by one-sided (Hestenes) Jacobi. Small
/// singular values keep absolute accuracy near machine epsilon times the
/// largest one, unlike square roots of the eigenvalues of M M^dagger.
std::vector<double> singular_values(const ComplexMatrix &m);

/// True when m + tol*I admits a Cholesky factorization, i.e. every
/// eigenvalue of the Hermitian input is >= -tol.
bool is_psd(const ComplexMatrix &m, double tol);

/// Real roots of t^3 + c2 t^2 + c1 t + c0, descending. The cubic must have
/// three real roots up to rounding; a clearly negative discriminant throws
/// NumericError.
std::array<double, 3> cubic_roots_real(double c2, double c1, double c0);

} // namespace entweb
