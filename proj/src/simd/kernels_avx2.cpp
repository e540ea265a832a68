// AVX2/FMA kernels. Built with -mavx2 -mfma; only reached after a CPUID check.
// A __m256d holds two complex doubles as [re0, im0, re1, im1].

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace erglab::simd::avx2 {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

// (a * b) lane-wise complex product.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

// (a * conj(b)) lane-wise.
inline __m256d cmul_conj(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  // re: ar*br + ai*bi, im: ai*br - ar*bi
  return _mm256_fmsubadd_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline cplx hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

}  // namespace

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(load2(a + i), load2(b + i)));
    acc1 = _mm256_add_pd(acc1, cmul(load2(a + i + 2), load2(b + i + 2)));
  }
  for (; i + 2 <= n; i += 2) acc0 = _mm256_add_pd(acc0, cmul(load2(a + i), load2(b + i)));
  cplx s = hsum(_mm256_add_pd(acc0, acc1));
  if (i < n) s += scalar::dot(a + i, b + i, n - i);
  return s;
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul_conj(load2(a + i), load2(b + i)));
    acc1 = _mm256_add_pd(acc1, cmul_conj(load2(a + i + 2), load2(b + i + 2)));
  }
  for (; i + 2 <= n; i += 2) acc0 = _mm256_add_pd(acc0, cmul_conj(load2(a + i), load2(b + i)));
  cplx s = hsum(_mm256_add_pd(acc0, acc1));
  if (i < n) s += scalar::dot_conj(a + i, b + i, n - i);
  return s;
}

cplx product_sum(const cplx* const* rows, std::size_t n_rows, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d p = load2(rows[0] + i);
    for (std::size_t j = 1; j < n_rows; ++j) p = cmul(p, load2(rows[j] + i));
    acc = _mm256_add_pd(acc, p);
  }
  cplx s = hsum(acc);
  if (i < n) {
    const cplx* tail[kMaxRows];
    for (std::size_t j = 0; j < n_rows; ++j) tail[j] = rows[j] + i;
    s += scalar::product_sum(tail, n_rows, n - i);
  }
  return s;
}

void mul_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(reinterpret_cast<double*>(out + i), cmul_conj(load2(a + i), load2(b + i)));
  }
  if (i < n) scalar::mul_conj(out + i, a + i, b + i, n - i);
}

double abs4_sum(const cplx* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load2(a + i);
    const __m256d sq = _mm256_mul_pd(v, v);                // re^2, im^2
    const __m256d m2 = _mm256_add_pd(sq, _mm256_permute_pd(sq, 0x5));  // |z|^2 in both lanes
    acc = _mm256_fmadd_pd(m2, m2, acc);
  }
  // Each |z|^4 was accumulated twice (once per component lane).
  const cplx h = hsum(acc);
  double s = 0.5 * (h.real() + h.imag());
  if (i < n) s += scalar::abs4_sum(a + i, n - i);
  return s;
}

}  // namespace erglab::simd::avx2
