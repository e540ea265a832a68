#pragma once

#include <cstddef>

#include "erglab/finite_seq.hpp"
#include "erglab/systems/systems.hpp"

namespace erglab::gowers {

/// (1 / N^{s+2}) sum over (n, n_0..n_s) in [1, N]^{s+2} of
/// prod_{e in {0,1}^{s+1}} f(n + n.e), with f = 0 outside [1, N].
/// f must be real with |f| <= 1; requires N^{s+2} <= 1e9.
double cube_count(const FiniteSeq& f, int s);

/// ||f||_{U^s(Z_m)} of f zero-padded to Z_m, by the recursive derivative
/// formula ||f||^{2^s} = E_h ||Delta_h f||^{2^{s-1}}, Delta_h f(x) = f(x) conj f(x+h),
/// with ||g||_{U^1} = |E g|. Requires m >= N and m^s <= 4e9.
double gowers_uk_cyclic(const FiniteSeq& f, int s, std::size_t m);

/// ||f||_{U^2(Z_m)} from sum_xi |f^(xi)|^4, f^(xi) = (1/m) sum_x f(x) e(-x xi/m).
/// m must be a power of two >= N.
double u2_via_fft(const FiniteSeq& f, std::size_t m);

/// ||f 1_[N]||_{U^s(Z_M)} / ||1_[N]||_{U^s(Z_M)} for s in {2, 3}, N >= 4.
/// modulus = 0 picks the smallest power of two >= 2^s N; an explicit modulus must
/// be a power of two at least that large.
double gowers_uk_interval(const FiniteSeq& f, int s, std::size_t modulus = 0);

struct GhkParams {
  int k = 2;
  std::size_t h_max = 1000;
  std::size_t n_samples = 100000;
};

/// Truncated Gowers-Host-Kra seminorm of f along the orbit of x:
/// level 1 is |Birkhoff average over n = 1..n_samples|, level j+1 averages the
/// level-j quantity of conj(f) * f o T^l over l = 1..h_max.
double ghk_estimate(const systems::SystemSpec& sys, const systems::Observable& f, const systems::Point& x,
                    const GhkParams& params);

}  // namespace erglab::gowers
