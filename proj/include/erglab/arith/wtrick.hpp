#pragma once

#include <cstdint>
#include <vector>

#include "erglab/arith/sieve.hpp"

namespace erglab::arith {

/// W-trick modulus. residues lists r in [0, W) with gcd(r, W) = 1, ascending;
/// for W = 1 this is the single residue 0.
struct WTrickParams {
  std::uint64_t W = 1;
  std::vector<std::uint64_t> residues;
  std::uint64_t phi_W = 1;
};

/// Explicit modulus. W must be a product of the first j primes (1, 2, 6, 30, ...).
WTrickParams make_w_trick(std::uint64_t W);

/// W = product of primes p <= (1/2) log log n, for n >= 3.
WTrickParams default_W(std::uint64_t n);
/// Same rule from log n directly, for n beyond integer range. log_n > 1.
WTrickParams default_W_from_log(double log_n);

/// (phi(W)/W) Lambda'(W n + r).
double w_trick_weight(const WTrickParams& params, const SieveTable& table, std::uint64_t r,
                      std::uint64_t n);

/// p/(p-1) when p does not divide b, else 0.
double local_mangoldt(std::uint64_t p, std::int64_t b);

/// Average over (Z/pZ)^k of prod_{e in C*} Lambda_{Z/pZ}(n.e), by enumeration.
/// Requires p prime <= 97, 1 <= k <= 6 and p^k <= 2^30.
double beta_p(std::uint64_t p, int k);

/// Number of n in (Z/pZ)^k with n.e != 0 mod p for all e in C*.
std::uint64_t beta_p_count(std::uint64_t p, int k);

bool is_prime_trial(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

}  // namespace erglab::arith
