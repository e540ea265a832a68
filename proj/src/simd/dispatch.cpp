#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "erglab/summation.hpp"
#include "kernels_impl.hpp"

namespace erglab::simd {
namespace {

const KernelTable kScalar{scalar::dot, scalar::dot_conj, scalar::product_sum, scalar::mul_conj,
                          scalar::abs4_sum};

#if defined(ERGLAB_HAVE_AVX2)
const KernelTable kAvx2{avx2::dot, avx2::dot_conj, avx2::product_sum, avx2::mul_conj,
                        avx2::abs4_sum};
#endif

bool cpu_has_avx2() {
#if defined(ERGLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("ERGLAB_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::kScalar;
  }
  return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

const KernelTable& active() { return kernels_for(current().load(std::memory_order_relaxed)); }

// Applies a per-block kernel and pairwise-combines the block results.
template <class T, class F>
T blocked(std::size_t n, F&& block) {
  if (n <= kBlock) return block(std::size_t{0}, n);
  std::vector<T> parts;
  parts.reserve(n / kBlock + 1);
  for (std::size_t off = 0; off < n; off += kBlock) parts.push_back(block(off, std::min(kBlock, n - off)));
  return pairwise_sum(std::span<const T>(parts));
}

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

const KernelTable* avx2_kernels() {
#if defined(ERGLAB_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool isa_available(Isa isa) {
  if (isa == Isa::kScalar) return true;
  return cpu_has_avx2();
}

const KernelTable& kernels_for(Isa isa) {
#if defined(ERGLAB_HAVE_AVX2)
  if (isa == Isa::kAvx2) return kAvx2;
#endif
  (void)isa;
  return kScalar;
}

Isa active_isa() { return current().load(); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument("requested ISA is not available on this CPU");
  current().store(isa);
}

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  const auto& k = active();
  return blocked<cplx>(n, [&](std::size_t off, std::size_t len) { return k.dot(a + off, b + off, len); });
}

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  const auto& k = active();
  return blocked<cplx>(n, [&](std::size_t off, std::size_t len) { return k.dot_conj(a + off, b + off, len); });
}

cplx product_sum(std::span<const cplx* const> rows, std::size_t n) {
  if (rows.empty()) return cplx(static_cast<double>(n), 0.0);
  if (rows.size() > kMaxRows) throw std::invalid_argument("product_sum: too many rows");
  const auto& k = active();
  return blocked<cplx>(n, [&](std::size_t off, std::size_t len) {
    const cplx* shifted[kMaxRows];
    for (std::size_t j = 0; j < rows.size(); ++j) shifted[j] = rows[j] + off;
    return k.product_sum(shifted, rows.size(), len);
  });
}

void mul_conj(cplx* out, const cplx* a, const cplx* b, std::size_t n) { active().mul_conj(out, a, b, n); }

double abs4_sum(const cplx* a, std::size_t n) {
  const auto& k = active();
  return blocked<double>(n, [&](std::size_t off, std::size_t len) { return k.abs4_sum(a + off, len); });
}

}  // namespace erglab::simd
