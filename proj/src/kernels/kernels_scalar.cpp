#include <array>
#include <cmath>

#include "entweb/kernels.hpp"

namespace entweb::kernels::detail {

namespace {

struct Cs {
  double re;
  double im;
};

inline double neg(double v) { return -v; }
inline Cs add(Cs a, Cs b) { return {a.re + b.re, a.im + b.im}; }
inline Cs sub(Cs a, Cs b) { return {a.re - b.re, a.im - b.im}; }
inline Cs mul(Cs a, Cs b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Cs conj(Cs a) { return {a.re, -a.im}; }

#include "triplet_charpoly.inl"

} // namespace

void triplet_charpoly_scalar(const TripletBlock &block, const double *x, const double *y, const double *z,
                             double *c2, double *c1, double *c0, std::size_t count) {
  std::array<Cs, 9> q;
  for (int k = 0; k < 9; ++k) q[k] = {block.flip[k].real(), block.flip[k].imag()};
  for (std::size_t i = 0; i < count; ++i) {
    triplet_charpoly_lane<Cs, double>(q, block.a[0], block.a[1], block.a[2], std::sqrt(x[i]), std::sqrt(y[i]),
                                      std::sqrt(z[i]), 0.0, c2[i], c1[i], c0[i]);
  }
}

void hermitian_gram_scalar(const cplx *g, std::size_t rows, std::size_t cols, cplx *out) {
  const double *raw = reinterpret_cast<const double *>(g);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i; j < rows; ++j) {
      const double *a = raw + 2 * i * cols;
      const double *b = raw + 2 * j * cols;
      double re = 0.0;
      double im = 0.0;
      for (std::size_t k = 0; k < cols; ++k) {
        // a_k * conj(b_k)
        re += a[2 * k] * b[2 * k] + a[2 * k + 1] * b[2 * k + 1];
        im += a[2 * k + 1] * b[2 * k] - a[2 * k] * b[2 * k + 1];
      }
      out[i * rows + j] = cplx(re, im);
      out[j * rows + i] = cplx(re, -im);
    }
  }
}

} // namespace entweb::kernels::detail
