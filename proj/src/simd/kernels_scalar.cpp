// Reference kernels: one accumulator per real component, strictly sequential.

#include "kernels_impl.hpp"

namespace erglab::simd::scalar {

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
  }
  return {re, im};
}

cplx product_sum(const cplx* const* rows, std::size_t n_rows, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double pr = rows[0][i].real(), pi = rows[0][i].imag();
    for (std::size_t j = 1; j < n_rows; ++j) {
      const double qr = rows[j][i].real(), qi = rows[j][i].imag();
      const double t = pr * qr - pi * qi;
      pi = pr * qi + pi * qr;
      pr = t;
    }
    re += pr;
    im += pi;
  }
  return {re, im};
}

void mul_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    const double im = a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    out[i] = cplx(re, im);
  }
}

double abs4_sum(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m2 = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    s += m2 * m2;
  }
  return s;
}

}  // namespace erglab::simd::scalar
