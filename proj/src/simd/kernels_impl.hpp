#pragma once

#include <cstddef>

#include "erglab/simd/kernels.hpp"

namespace erglab::simd {

namespace scalar {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);
cplx product_sum(const cplx* const* rows, std::size_t n_rows, std::size_t n);
void mul_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n);
double abs4_sum(const cplx* a, std::size_t n);
}  // namespace scalar

#if defined(ERGLAB_HAVE_AVX2)
namespace avx2 {
cplx dot(const cplx* a, const cplx* b, std::size_t n);
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);
cplx product_sum(const cplx* const* rows, std::size_t n_rows, std::size_t n);
void mul_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n);
double abs4_sum(const cplx* a, std::size_t n);
}  // namespace avx2
#endif

}  // namespace erglab::simd
