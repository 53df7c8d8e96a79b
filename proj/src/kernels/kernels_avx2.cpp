// Compiled with -mavx2 -mfma; only reached after a runtime CPUID check.

#include <array>
#include <cmath>
#include <immintrin.h>

#include "entweb/kernels.hpp"

namespace entweb::kernels::detail {

namespace {

struct Cv {
  __m256d re;
  __m256d im;
};

inline __m256d neg(__m256d v) { return _mm256_sub_pd(_mm256_setzero_pd(), v); }
inline Cv add(Cv a, Cv b) { return {_mm256_add_pd(a.re, b.re), _mm256_add_pd(a.im, b.im)}; }
inline Cv sub(Cv a, Cv b) { return {_mm256_sub_pd(a.re, b.re), _mm256_sub_pd(a.im, b.im)}; }
inline Cv mul(Cv a, Cv b) {
  return {_mm256_fmsub_pd(a.re, b.re, _mm256_mul_pd(a.im, b.im)),
          _mm256_fmadd_pd(a.re, b.im, _mm256_mul_pd(a.im, b.re))};
}
inline Cv conj(Cv a) { return {a.re, neg(a.im)}; }

#include "triplet_charpoly.inl"

} // namespace

void triplet_charpoly_avx2(const TripletBlock &block, const double *x, const double *y, const double *z,
                           double *c2, double *c1, double *c0, std::size_t count) {
  std::array<Cv, 9> q;
  for (int k = 0; k < 9; ++k) q[k] = {_mm256_set1_pd(block.flip[k].real()), _mm256_set1_pd(block.flip[k].imag())};
  const __m256d ax = _mm256_set1_pd(block.a[0]);
  const __m256d ay = _mm256_set1_pd(block.a[1]);
  const __m256d az = _mm256_set1_pd(block.a[2]);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d mx = _mm256_sqrt_pd(_mm256_loadu_pd(x + i));
    const __m256d my = _mm256_sqrt_pd(_mm256_loadu_pd(y + i));
    const __m256d mz = _mm256_sqrt_pd(_mm256_loadu_pd(z + i));
    __m256d r2, r1, r0;
    triplet_charpoly_lane<Cv, __m256d>(q, ax, ay, az, mx, my, mz, zero, r2, r1, r0);
    _mm256_storeu_pd(c2 + i, r2);
    _mm256_storeu_pd(c1 + i, r1);
    _mm256_storeu_pd(c0 + i, r0);
  }
  if (i < count) triplet_charpoly_scalar(block, x + i, y + i, z + i, c2 + i, c1 + i, c0 + i, count - i);
}

void hermitian_gram_avx2(const cplx *g, std::size_t rows, std::size_t cols, cplx *out) {
  const double *raw = reinterpret_cast<const double *>(g);
  const std::size_t pairs = cols / 2; // two complex numbers per register
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = i; j < rows; ++j) {
      const double *a = raw + 2 * i * cols;
      const double *b = raw + 2 * j * cols;
      __m256d acc_re = _mm256_setzero_pd();
      __m256d acc_im = _mm256_setzero_pd();
      for (std::size_t k = 0; k < pairs; ++k) {
        const __m256d va = _mm256_loadu_pd(a + 4 * k); // ar0 ai0 ar1 ai1
        const __m256d vb = _mm256_loadu_pd(b + 4 * k); // br0 bi0 br1 bi1
        acc_re = _mm256_fmadd_pd(va, vb, acc_re);      // ar br, ai bi
        const __m256d vb_swap = _mm256_permute_pd(vb, 0b0101); // bi0 br0 bi1 br1
        acc_im = _mm256_fmadd_pd(va, vb_swap, acc_im);          // ar bi, ai br
      }
      alignas(32) double re_parts[4];
      alignas(32) double im_parts[4];
      _mm256_store_pd(re_parts, acc_re);
      _mm256_store_pd(im_parts, acc_im);
      double re = (re_parts[0] + re_parts[1]) + (re_parts[2] + re_parts[3]);
      double im = (im_parts[1] - im_parts[0]) + (im_parts[3] - im_parts[2]);
      for (std::size_t k = 2 * pairs; k < cols; ++k) {
        re += a[2 * k] * b[2 * k] + a[2 * k + 1] * b[2 * k + 1];
        im += a[2 * k + 1] * b[2 * k] - a[2 * k] * b[2 * k + 1];
      }
      out[i * rows + j] = cplx(re, im);
      out[j * rows + i] = cplx(re, -im);
    }
  }
}

} // namespace entweb::kernels::detail
