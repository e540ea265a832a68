#pragma once

// Complex inner-loop kernels with a scalar reference and an AVX2/FMA variant.
// The variant is chosen once at runtime from CPUID; ERGLAB_SIMD=scalar forces
// the reference path. Public entry points split long inputs into blocks of
// kBlock terms and combine the block results by pairwise summation, so both
// variants share the same outer association order.

#include <cstddef>
#include <span>
#include <string_view>

#include "erglab/finite_seq.hpp"

namespace erglab::simd {

enum class Isa { kScalar, kAvx2 };

inline constexpr std::size_t kBlock = 1024;
/// Upper bound on the number of rows accepted by product_sum.
inline constexpr std::size_t kMaxRows = 64;

Isa active_isa();
bool isa_available(Isa isa);
/// Overrides the dispatch choice (tests and benchmarks). Throws if unavailable.
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

/// sum_i a[i] * b[i]
cplx dot(const cplx* a, const cplx* b, std::size_t n);
/// sum_i a[i] * conj(b[i])
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);
/// sum_i prod_j rows[j][i]
cplx product_sum(std::span<const cplx* const> rows, std::size_t n);
/// out[i] = a[i] * conj(b[i])
void mul_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n);
/// sum_i |a[i]|^4
double abs4_sum(const cplx* a, std::size_t n);

// Unblocked per-ISA kernels. Exposed for the equivalence tests.
struct KernelTable {
  cplx (*dot)(const cplx*, const cplx*, std::size_t);
  cplx (*dot_conj)(const cplx*, const cplx*, std::size_t);
  cplx (*product_sum)(const cplx* const*, std::size_t, std::size_t);
  void (*mul_conj)(cplx*, const cplx*, const cplx*, std::size_t);
  double (*abs4_sum)(const cplx*, std::size_t);
};

const KernelTable& scalar_kernels();
/// Null when the library was built without AVX2 support.
const KernelTable* avx2_kernels();
const KernelTable& kernels_for(Isa isa);

}  // namespace erglab::simd
