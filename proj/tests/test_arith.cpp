#include "doctest.h"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "erglab/arith/estimators.hpp"
#include "erglab/arith/sieve.hpp"
#include "erglab/arith/wtrick.hpp"
#include "erglab/errors.hpp"

using namespace erglab;
using namespace erglab::arith;

namespace {

struct Factored {
  int omega = 0;
  bool square_free = true;
  std::uint64_t single_prime = 0;  // p when n is a power of p
};

Factored factor(std::uint64_t n) {
  Factored f;
  int distinct = 0;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    ++distinct;
    f.single_prime = p;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.omega += e;
    if (e > 1) f.square_free = false;
  }
  if (n > 1) {
    ++distinct;
    f.single_prime = n;
    ++f.omega;
  }
  if (distinct != 1) f.single_prime = 0;
  return f;
}

double series_li(double x) {
  // li(x) = gamma + log log x + sum_k (log x)^k / (k k!), and Li(x) = li(x) - li(2).
  const double l = std::log(x);
  double term = 1.0, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= l / k;
    sum += term / k;
  }
  return 0.57721566490153286061 + std::log(l) + sum - 1.04516378011749278484;
}

}  // namespace

TEST_CASE("sieve matches trial division up to 10^4") {
  const auto t = build_sieve(10000);
  for (std::uint64_t n = 2; n <= 10000; ++n) {
    const Factored f = factor(n);
    CHECK(t.omega_big(n) == f.omega);
    CHECK(t.lambda(n) == (f.omega % 2 == 0 ? 1 : -1));
    CHECK(t.mu(n) == (f.square_free ? t.lambda(n) : 0));
    const bool prime = f.omega == 1;
    CHECK(t.is_prime(n) == prime);
    CHECK(t.mangoldt(n) == (f.single_prime ? std::log(static_cast<double>(f.single_prime)) : 0.0));
    CHECK(t.mangoldt_prime(n) == (prime ? std::log(static_cast<double>(n)) : 0.0));
    std::uint64_t m = n, rebuilt = 1;
    while (m > 1) {
      rebuilt *= t.spf(m);
      m /= t.spf(m);
    }
    CHECK(rebuilt == n);
  }
}

TEST_CASE("sieve conventions and small examples") {
  const auto t = build_sieve(12);
  const int mu[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
  for (int n = 1; n <= 10; ++n) CHECK(t.mu(n) == mu[n - 1]);
  CHECK(t.omega_big(1) == 0);
  CHECK(t.lambda(1) == 1);
  CHECK(t.mangoldt(1) == 0.0);
  CHECK(t.mangoldt_prime(1) == 0.0);
  CHECK(t.omega_big(12) == 3);
  CHECK(t.lambda(12) == -1);
  CHECK(t.mu(12) == 0);
  CHECK(t.mangoldt(9) == std::log(3.0));
  CHECK(t.mangoldt_prime(9) == 0.0);
  CHECK_THROWS_AS(build_sieve(0), std::invalid_argument);
  CHECK_THROWS_AS(build_sieve(1), std::invalid_argument);
}

TEST_CASE("multiplicativity") {
  const auto t = build_sieve(100000);
  for (std::uint64_t m = 1; m <= 300; ++m) {
    for (std::uint64_t n = 1; n <= 300; ++n) {
      CHECK(t.lambda(m * n) == t.lambda(m) * t.lambda(n));
      if (std::gcd(m, n) == 1) CHECK(t.mu(m * n) == t.mu(m) * t.mu(n));
    }
  }
}

TEST_CASE("chebyshev functions") {
  const auto t = build_sieve(1000);
  const auto c2 = chebyshev(t, 2.0);
  CHECK(c2.psi == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(c2.upsilon == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const auto c8 = chebyshev(t, 8.0);
  CHECK(c8.psi == doctest::Approx(3 * std::log(2.0) + std::log(3.0) + std::log(5.0) + std::log(7.0)).epsilon(1e-14));
  CHECK(c8.upsilon == doctest::Approx(std::log(2.0) + std::log(3.0) + std::log(5.0) + std::log(7.0)).epsilon(1e-14));
  CHECK(chebyshev(t, 8.7).psi == c8.psi);
  CHECK_THROWS_AS(chebyshev(t, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(chebyshev(t, 1001.0), std::invalid_argument);
}

TEST_CASE("psi minus upsilon gap bound holds pointwise") {
  const auto t = build_sieve(100000);
  for (std::uint64_t x = 2; x <= 100000; ++x) {
    const double gap = t.psi_at(x) - t.upsilon_at(x);
    CHECK(gap >= -1e-9);
    CHECK(gap / static_cast<double>(x) <= chebyshev_gap_bound(static_cast<double>(x)));
  }
}

TEST_CASE("prime counting and the logarithmic integral") {
  const auto t = build_sieve(1000000);
  CHECK(prime_pi_li(t, 10).pi == 4);
  CHECK(prime_pi_li(t, 100).pi == 25);
  // Independent Eratosthenes count.
  std::vector<bool> composite(1000001, false);
  std::uint64_t count = 0;
  for (std::uint64_t i = 2; i <= 1000000; ++i) {
    if (composite[i]) continue;
    ++count;
    for (std::uint64_t j = i * i; j <= 1000000; j += i) composite[j] = true;
  }
  CHECK(prime_pi_li(t, 1000000).pi == count);
  for (const double x : {10.0, 100.0, 1000.0, 1e6}) {
    CHECK(logarithmic_integral(x) == doctest::Approx(series_li(x)).epsilon(1e-9));
  }
  CHECK(logarithmic_integral(2.0) == 0.0);
}

TEST_CASE("aperiodicity profile and statistical orthogonality") {
  const auto ones = FiniteSeq::generate(100, [](std::size_t) { return 1.0; });
  CHECK(aperiodicity_profile(ones, 5) == doctest::Approx(1.0));
  const auto alt = FiniteSeq::generate(100, [](std::size_t n) { return n % 2 ? -1.0 : 1.0; });
  CHECK(aperiodicity_profile(alt, 1) == 0.0);
  CHECK(aperiodicity_profile(alt, 2) == doctest::Approx(1.0));
  CHECK(stat_orth_ratio(ones, ones) == doctest::Approx(1.0));
  CHECK(stat_orth_ratio(ones, alt) == 0.0);
  const FiniteSeq zero(100);
  CHECK_THROWS_AS(stat_orth_ratio(ones, zero), degenerate_input_error);
}

TEST_CASE("lemma NH quantities") {
  const auto t = build_sieve(100000);
  for (const double c : {0.5, 1.0, 2.0}) {
    const double n = 1e4;
    const double l = std::log(n);
    CHECK(nh_bound(n, c) == doctest::Approx(8 * c / l + 6 * c * c / (l * l) + l * l / (2 * std::sqrt(n) * std::log(2.0))));
  }
  for (const double gap : {0.01, 0.3, 2.0}) {
    const double c = nh_constant_for(gap, 1e5);
    const double l = std::log(1e5);
    CHECK(8 * c / l + 6 * c * c / (l * l) == doctest::Approx(gap).epsilon(1e-12));
  }
  const auto ones = FiniteSeq::generate(100000, [](std::size_t) { return 1.0; });
  const auto rot = FiniteSeq::generate(100000, [](std::size_t n) { return unit_phase(n * std::sqrt(2.0)); });
  for (const auto* a : {&ones, &rot}) {
    const auto pg = nh_prime_gap(*a, t);
    CHECK(pg.lhs <= pg.bound);
    const double c = nh_constant_for(pg.bound, 1e5);
    const auto g = nh_gap(*a, t, {c});
    CHECK(g.lhs <= g.rhs);
  }
  CHECK_THROWS_AS(nh_gap(ones, t, {0.0}), std::invalid_argument);
}

TEST_CASE("w-trick parameters") {
  const auto w6 = make_w_trick(6);
  CHECK(w6.residues == std::vector<std::uint64_t>{1, 5});
  CHECK(w6.phi_W == 2);
  const auto w30 = make_w_trick(30);
  CHECK(w30.residues.size() == 8);
  CHECK(w30.phi_W == euler_phi(30));
  const auto w1 = make_w_trick(1);
  CHECK(w1.residues == std::vector<std::uint64_t>{0});
  CHECK_THROWS_AS(make_w_trick(4), std::invalid_argument);
  CHECK_THROWS_AS(make_w_trick(0), std::invalid_argument);
  CHECK(default_W_from_log(std::exp(10.0)).W == 30);
  CHECK(default_W(1000).W == 1);
  const auto t = build_sieve(1000);
  CHECK(w_trick_weight(w6, t, 1, 2) == doctest::Approx(std::log(13.0) / 3.0));
  CHECK(w_trick_weight(w6, t, 5, 5) == 0.0);
}

TEST_CASE("local von Mangoldt and beta_p") {
  CHECK(local_mangoldt(5, 3) == doctest::Approx(1.25));
  CHECK(local_mangoldt(5, 10) == 0.0);
  CHECK(local_mangoldt(5, -3) == doctest::Approx(1.25));
  CHECK(beta_p(2, 2) == 0.0);
  CHECK(beta_p(3, 2) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(beta_p(5, 2) == doctest::Approx(15.0 / 16.0).epsilon(1e-15));
  CHECK(beta_p(7, 2) == doctest::Approx(35.0 / 36.0).epsilon(1e-15));
  for (std::uint64_t p = 2; p <= 97; ++p) {
    if (!is_prime_trial(p)) continue;
    CHECK(beta_p(p, 1) == doctest::Approx(1.0).epsilon(1e-14));
    const double pd = static_cast<double>(p);
    if (p > 2) CHECK(beta_p(p, 2) == doctest::Approx(pd * (pd - 2) / ((pd - 1) * (pd - 1))).epsilon(1e-13));
  }
  // Brute force over (Z/pZ)^k against every nonzero 0/1 vertex.
  for (const std::uint64_t p : {2u, 3u, 5u, 7u}) {
    for (int k = 1; k <= 3; ++k) {
      std::uint64_t total = 1;
      for (int i = 0; i < k; ++i) total *= p;
      std::uint64_t good = 0;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint64_t> n(k);
        std::uint64_t c = code;
        for (int i = 0; i < k; ++i) {
          n[i] = c % p;
          c /= p;
        }
        bool ok = true;
        for (std::uint64_t mask = 1; mask < (1u << k) && ok; ++mask) {
          std::uint64_t s = 0;
          for (int i = 0; i < k; ++i) {
            if (mask >> i & 1) s += n[i];
          }
          ok = s % p != 0;
        }
        good += ok;
      }
      CHECK(beta_p_count(p, k) == good);
    }
  }
  CHECK_THROWS_AS(beta_p(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(beta_p(101, 2), std::invalid_argument);
}

TEST_CASE("sieve dump round trip") {
  const auto t = build_sieve(5000);
  std::stringstream buf;
  t.save(buf);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 16 + 5001 * (4 + 1 + 1 + 1 + 8 + 8));
  CHECK(bytes.substr(0, 4) == "ERGS");
  std::stringstream in(bytes);
  const auto u = SieveTable::load(in);
  REQUIRE(u.n_max() == 5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    CHECK(u.spf(n) == t.spf(n));
    CHECK(u.mu(n) == t.mu(n));
    CHECK(u.lambda(n) == t.lambda(n));
    CHECK(u.omega_big(n) == t.omega_big(n));
    CHECK(u.mangoldt(n) == t.mangoldt(n));
    CHECK(u.mangoldt_prime(n) == t.mangoldt_prime(n));
    CHECK(u.psi_at(n) == t.psi_at(n));
    CHECK(u.pi_at(n) == t.pi_at(n));
  }
  std::stringstream bad("XXXX" + bytes.substr(4));
  CHECK_THROWS_AS(SieveTable::load(bad), format_error);
  std::stringstream cut(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(SieveTable::load(cut), format_error);
}
