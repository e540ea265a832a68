#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace erglab::arith {

/// Factorization and weight tables on [1, n_max], built by a linear sieve.
///
/// Conventions: Omega(1) = 0, lambda(1) = mu(1) = 1, Lambda(1) = Lambda'(1) = 0,
/// spf(1) = 1. Logarithms are natural. Slot 0 of every array is unused and zero.
/// Prefix sums of Lambda and Lambda' (psi and upsilon) and the prime-counting
/// prefix are filled at construction; the table is immutable afterwards.
class SieveTable {
 public:
  std::uint64_t n_max() const { return n_max_; }

  std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
  int omega_big(std::uint64_t n) const { return omega_[n]; }
  int mu(std::uint64_t n) const { return mu_[n]; }
  int lambda(std::uint64_t n) const { return lambda_[n]; }
  double mangoldt(std::uint64_t n) const { return mangoldt_[n]; }
  double mangoldt_prime(std::uint64_t n) const { return mangoldt_prime_[n]; }
  bool is_prime(std::uint64_t n) const { return n >= 2 && spf_[n] == n; }

  /// psi(n) = sum_{m<=n} Lambda(m); upsilon(n) = sum_{m<=n} Lambda'(m); pi(n).
  double psi_at(std::uint64_t n) const { return psi_[n]; }
  double upsilon_at(std::uint64_t n) const { return upsilon_[n]; }
  std::uint64_t pi_at(std::uint64_t n) const { return pi_[n]; }

  std::span<const std::uint32_t> spf_values() const { return spf_; }
  std::span<const std::uint8_t> omega_values() const { return omega_; }
  std::span<const std::int8_t> mu_values() const { return mu_; }
  std::span<const std::int8_t> lambda_values() const { return lambda_; }
  std::span<const double> mangoldt_values() const { return mangoldt_; }
  std::span<const double> mangoldt_prime_values() const { return mangoldt_prime_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  /// Binary dump, see README ("Sieve dump format").
  void save(std::ostream& out) const;
  static SieveTable load(std::istream& in);

  static constexpr char kMagic[4] = {'E', 'R', 'G', 'S'};
  static constexpr std::uint32_t kVersion = 1;

  friend SieveTable build_sieve(std::uint64_t n_max);

 private:
  SieveTable() = default;
  void fill_prefixes();

  std::uint64_t n_max_ = 0;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint8_t> omega_;
  std::vector<std::int8_t> mu_;
  std::vector<std::int8_t> lambda_;
  std::vector<double> mangoldt_;
  std::vector<double> mangoldt_prime_;

  std::vector<std::uint32_t> primes_;
  std::vector<double> psi_;
  std::vector<double> upsilon_;
  std::vector<std::uint32_t> pi_;
};

/// Throws std::invalid_argument for n_max < 2 or n_max >= 2^32.
SieveTable build_sieve(std::uint64_t n_max);

}  // namespace erglab::arith
