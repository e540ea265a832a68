#pragma once

#include <cstdint>
#include <span>

#include "erglab/arith/sieve.hpp"
#include "erglab/finite_seq.hpp"

namespace erglab::arith {

struct Chebyshev {
  double psi = 0.0;
  double upsilon = 0.0;
};

/// psi(x), upsilon(x) for 2 <= x <= n_max (x is truncated to an integer).
Chebyshev chebyshev(const SieveTable& table, double x);

struct PrimeCount {
  std::uint64_t pi = 0;
  double li = 0.0;
};

PrimeCount prime_pi_li(const SieveTable& table, std::uint64_t n);

/// int_2^x dt / log t by composite Simpson on dyadic panels, step at most 0.5.
double logarithmic_integral(double x);

/// Upper bound for (psi(x) - upsilon(x)) / x used by the Chebyshev gap check:
/// (log x)^2 / (2 sqrt(x) log 2).
double chebyshev_gap_bound(double x);

/// Largest |mean of seq over {n <= N : n = b mod a}| over 1 <= a <= a_max, 0 <= b < a.
double aperiodicity_profile(const FiniteSeq& seq, std::uint64_t a_max);

/// |<a, b>| / (||a|| ||b||) with normalized inner products. In [0, 1].
double stat_orth_ratio(const FiniteSeq& a, const FiniteSeq& b);

struct NhConfig {
  double c_abs = 1.0;
};

struct NhGap {
  double lhs = 0.0;  // |(1/pi(N)) sum_{p<=N} a_p - (1/N) sum Lambda(n) a_n|
  double rhs = 0.0;  // 8C/log N + 6C^2/(log N)^2 + (log N)^2/(2 sqrt(N) log 2)
};

/// Prime average against the Lambda-weighted average for |a_n| <= 1, N = a.size() >= 3.
NhGap nh_gap(const FiniteSeq& a, const SieveTable& table, const NhConfig& cfg = {});

double nh_bound(double n, double c_abs);

struct NhPrimeGap {
  double lhs = 0.0;    // |(1/pi(N)) sum_{p<=N} a_p - (1/N) sum Lambda'(n) a_n|
  double bound = 0.0;  // (pi(N)/N) |N/pi(N) - log N| + (log N pi(N) - upsilon(N)) / N
};

/// The Lambda' comparison together with its sequence-independent majorant.
NhPrimeGap nh_prime_gap(const FiniteSeq& a, const SieveTable& table);

/// Smallest C >= 0 with gap <= 8C/log N + 6C^2/(log N)^2.
double nh_constant_for(double gap, double n);

}  // namespace erglab::arith
