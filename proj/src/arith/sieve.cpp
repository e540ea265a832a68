#include "erglab/arith/sieve.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "erglab/errors.hpp"
#include "erglab/summation.hpp"

namespace erglab::arith {

SieveTable build_sieve(std::uint64_t n_max) {
  if (n_max < 2) throw std::invalid_argument("build_sieve: n_max must be at least 2");
  if (n_max >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("build_sieve: n_max must be below 2^32");
  }
  SieveTable t;
  t.n_max_ = n_max;
  const std::size_t size = n_max + 1;
  t.spf_.assign(size, 0);
  t.omega_.assign(size, 0);
  t.mu_.assign(size, 0);
  t.lambda_.assign(size, 0);
  t.mangoldt_.assign(size, 0.0);
  t.mangoldt_prime_.assign(size, 0.0);

  // Linear sieve: every composite n is reached once, as spf(n) * (n / spf(n)).
  t.spf_[1] = 1;
  t.mu_[1] = 1;
  t.lambda_[1] = 1;
  auto& primes = t.primes_;
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    if (t.spf_[n] == 0) {
      t.spf_[n] = static_cast<std::uint32_t>(n);
      primes.push_back(static_cast<std::uint32_t>(n));
      t.omega_[n] = 1;
      t.mu_[n] = -1;
      t.lambda_[n] = -1;
      const double lp = std::log(static_cast<double>(n));
      t.mangoldt_[n] = lp;
      t.mangoldt_prime_[n] = lp;
    }
    const std::uint32_t sp = t.spf_[n];
    for (const std::uint32_t p : primes) {
      if (p > sp) break;
      const std::uint64_t m = static_cast<std::uint64_t>(p) * n;
      if (m > n_max) break;
      t.spf_[m] = p;
      t.omega_[m] = static_cast<std::uint8_t>(t.omega_[n] + 1);
      t.lambda_[m] = static_cast<std::int8_t>(-t.lambda_[n]);
      t.mu_[m] = (p == sp) ? 0 : static_cast<std::int8_t>(-t.mu_[n]);
      // m is a prime power iff n is a power of the same prime p.
      if (p == sp && t.mangoldt_[n] != 0.0) t.mangoldt_[m] = t.mangoldt_[p];
    }
  }
  t.fill_prefixes();
  return t;
}

void SieveTable::fill_prefixes() {
  const std::size_t size = n_max_ + 1;
  psi_.assign(size, 0.0);
  upsilon_.assign(size, 0.0);
  pi_.assign(size, 0);
  CompensatedSum psi, ups;
  std::uint32_t count = 0;
  for (std::size_t n = 1; n < size; ++n) {
    psi.add(mangoldt_[n]);
    ups.add(mangoldt_prime_[n]);
    if (n >= 2 && spf_[n] == n) ++count;
    psi_[n] = psi.value();
    upsilon_[n] = ups.value();
    pi_[n] = count;
  }
  if (primes_.empty()) {
    for (std::size_t n = 2; n < size; ++n) {
      if (spf_[n] == n) primes_.push_back(static_cast<std::uint32_t>(n));
    }
  }
}

namespace {

template <class T>
void write_le(std::ostream& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T read_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw format_error("sieve dump: truncated input");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

template <class T>
void write_array(std::ostream& out, const std::vector<T>& xs) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(xs.data()), static_cast<std::streamsize>(xs.size() * sizeof(T)));
  } else {
    for (const T& x : xs) write_le(out, x);
  }
}

template <class T>
void read_array(std::istream& in, std::vector<T>& xs, std::size_t n) {
  xs.resize(n);
  if constexpr (std::endian::native == std::endian::little) {
    if (!in.read(reinterpret_cast<char*>(xs.data()), static_cast<std::streamsize>(n * sizeof(T)))) {
      throw format_error("sieve dump: truncated array");
    }
  } else {
    for (auto& x : xs) x = read_le<T>(in);
  }
}

}  // namespace

void SieveTable::save(std::ostream& out) const {
  out.write(kMagic, 4);
  write_le<std::uint32_t>(out, kVersion);
  write_le<std::uint64_t>(out, n_max_);
  write_array(out, spf_);
  write_array(out, omega_);
  write_array(out, mu_);
  write_array(out, lambda_);
  write_array(out, mangoldt_);
  write_array(out, mangoldt_prime_);
  if (!out) throw format_error("sieve dump: write failed");
}

SieveTable SieveTable::load(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw format_error("sieve dump: bad magic");
  const auto version = read_le<std::uint32_t>(in);
  if (version != kVersion) throw format_error("sieve dump: unsupported version " + std::to_string(version));
  const auto n_max = read_le<std::uint64_t>(in);
  if (n_max < 2 || n_max >= std::numeric_limits<std::uint32_t>::max()) {
    throw format_error("sieve dump: n_max out of range");
  }
  SieveTable t;
  t.n_max_ = n_max;
  const std::size_t size = n_max + 1;
  read_array(in, t.spf_, size);
  read_array(in, t.omega_, size);
  read_array(in, t.mu_, size);
  read_array(in, t.lambda_, size);
  read_array(in, t.mangoldt_, size);
  read_array(in, t.mangoldt_prime_, size);
  if (t.spf_[1] != 1 || t.mu_[1] != 1) throw format_error("sieve dump: inconsistent table");
  t.fill_prefixes();
  return t;
}

}  // namespace erglab::arith
