#include "erglab/arith/wtrick.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace erglab::arith {

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

WTrickParams make_w_trick(std::uint64_t W) {
  if (W == 0) throw std::invalid_argument("make_w_trick: W must be positive");
  std::uint64_t primorial = 1;
  for (std::uint64_t p = 2; primorial < W; ++p) {
    if (is_prime_trial(p)) primorial *= p;
  }
  if (primorial != W) {
    throw std::invalid_argument("make_w_trick: W must be a product of the first primes (1, 2, 6, 30, ...)");
  }
  WTrickParams params;
  params.W = W;
  for (std::uint64_t r = 0; r < W; ++r) {
    if (std::gcd(r, W) == 1) params.residues.push_back(r);
  }
  params.phi_W = params.residues.size();
  return params;
}

WTrickParams default_W_from_log(double log_n) {
  if (!(log_n > 1.0)) throw std::invalid_argument("default_W: log n must exceed 1");
  const double omega = 0.5 * std::log(log_n);
  std::uint64_t W = 1;
  for (std::uint64_t p = 2; static_cast<double>(p) <= omega; ++p) {
    if (is_prime_trial(p)) W *= p;
  }
  return make_w_trick(W);
}

WTrickParams default_W(std::uint64_t n) {
  if (n < 3) throw std::invalid_argument("default_W: n must be at least 3");
  return default_W_from_log(std::log(static_cast<double>(n)));
}

double w_trick_weight(const WTrickParams& params, const SieveTable& table, std::uint64_t r,
                      std::uint64_t n) {
  if (r >= params.W || std::gcd(r, params.W) != 1) {
    throw std::invalid_argument("w_trick_weight: residue must be coprime to W");
  }
  const std::uint64_t m = params.W * n + r;
  if (m > table.n_max()) throw std::out_of_range("w_trick_weight: W n + r exceeds sieve range");
  return static_cast<double>(params.phi_W) / static_cast<double>(params.W) * table.mangoldt_prime(m);
}

double local_mangoldt(std::uint64_t p, std::int64_t b) {
  if (!is_prime_trial(p)) throw std::invalid_argument("local_mangoldt: p must be prime");
  const auto pi = static_cast<std::int64_t>(p);
  const std::int64_t r = ((b % pi) + pi) % pi;
  return r == 0 ? 0.0 : static_cast<double>(p) / static_cast<double>(p - 1);
}

namespace {

void check_beta_range(std::uint64_t p, int k) {
  if (!is_prime_trial(p)) throw std::invalid_argument("beta_p: p must be prime");
  if (p > 97) throw std::invalid_argument("beta_p: p must be at most 97");
  if (k < 1 || k > 6) throw std::invalid_argument("beta_p: k must lie in [1, 6]");
  double cells = std::pow(static_cast<double>(p), k);
  if (cells > static_cast<double>(std::uint64_t{1} << 30)) {
    throw std::invalid_argument("beta_p: p^k exceeds the enumeration limit 2^30");
  }
}

// Depth-first over n_1..n_k. sums[mask] holds n.e mod p for every vertex mask
// supported on the assigned coordinates; a zero sum prunes the whole subtree.
void count_nonvanishing(std::uint64_t p, int k, int depth, std::array<std::uint32_t, 64>& sums,
                        std::uint64_t& count) {
  if (depth == k) {
    ++count;
    return;
  }
  const std::uint32_t bit = 1u << depth;
  for (std::uint32_t v = 0; v < p; ++v) {
    bool ok = true;
    for (std::uint32_t mask = 0; mask < bit; ++mask) {
      std::uint32_t s = sums[mask] + v;
      if (s >= p) s -= static_cast<std::uint32_t>(p);
      sums[mask | bit] = s;
      if (s == 0) {
        ok = false;
        break;
      }
    }
    if (ok) count_nonvanishing(p, k, depth + 1, sums, count);
  }
}

}  // namespace

std::uint64_t beta_p_count(std::uint64_t p, int k) {
  check_beta_range(p, k);
  std::array<std::uint32_t, 64> sums{};
  std::uint64_t count = 0;
  count_nonvanishing(p, k, 0, sums, count);
  return count;
}

double beta_p(std::uint64_t p, int k) {
  const std::uint64_t count = beta_p_count(p, k);
  // Every surviving n contributes (p/(p-1))^{2^k - 1}; all others contribute 0.
  const int vertices = (1 << k) - 1;
  const long double ratio = static_cast<long double>(p) / static_cast<long double>(p - 1);
  const long double cells = std::pow(static_cast<long double>(p), k);
  return static_cast<double>(static_cast<long double>(count) * std::pow(ratio, vertices) / cells);
}

}  // namespace erglab::arith
