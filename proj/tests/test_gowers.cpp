#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "erglab/arith/sieve.hpp"
#include "erglab/errors.hpp"
#include "erglab/gowers/gowers.hpp"

using namespace erglab;
using namespace erglab::gowers;

namespace {

FiniteSeq random_seq(std::size_t n, std::uint64_t seed, bool pm_one = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return FiniteSeq::generate(n, [&](std::size_t) -> cplx {
    if (pm_one) return u(rng) < 0 ? -1.0 : 1.0;
    return {u(rng), u(rng)};
  });
}

// Direct definition: average over (x, h_1..h_s) of prod_w C^{|w|} f(x + w.h).
double brute_cyclic(const FiniteSeq& f, int s, std::size_t m) {
  std::vector<cplx> g(m, 0.0);
  for (std::size_t n = 1; n <= f.size(); ++n) g[n % m] += f[n];
  const std::size_t tuples = static_cast<std::size_t>(std::pow(m, s + 1));
  std::complex<long double> acc = 0;
  std::vector<std::size_t> h(s);
  for (std::size_t code = 0; code < tuples; ++code) {
    std::size_t c = code;
    const std::size_t x = c % m;
    c /= m;
    for (int i = 0; i < s; ++i) {
      h[i] = c % m;
      c /= m;
    }
    cplx prod = 1.0;
    for (std::size_t w = 0; w < (std::size_t{1} << s); ++w) {
      std::size_t pos = x;
      int weight = 0;
      for (int i = 0; i < s; ++i) {
        if (w >> i & 1) {
          pos += h[i];
          ++weight;
        }
      }
      const cplx v = g[pos % m];
      prod *= weight % 2 ? std::conj(v) : v;
    }
    acc += std::complex<long double>(prod.real(), prod.imag());
  }
  const double mean = static_cast<double>(acc.real()) / static_cast<double>(tuples);
  return std::pow(std::max(mean, 0.0), 1.0 / std::pow(2.0, s));
}

double brute_cube_count(const FiniteSeq& f, int s) {
  const std::size_t n = f.size();
  const int dims = s + 2;
  std::vector<std::size_t> v(dims, 1);
  long double acc = 0;
  while (true) {
    long double prod = 1;
    for (std::size_t w = 0; w < (std::size_t{1} << (s + 1)) && prod != 0; ++w) {
      std::size_t pos = v[0];
      for (int i = 0; i <= s; ++i) {
        if (w >> i & 1) pos += v[i + 1];
      }
      prod *= pos <= n ? f[pos].real() : 0.0;
    }
    acc += prod;
    int d = 0;
    while (d < dims && ++v[d] > n) v[d++] = 1;
    if (d == dims) break;
  }
  return static_cast<double>(acc / std::pow(static_cast<long double>(n), dims));
}

}  // namespace

TEST_CASE("recursive cyclic norm matches the direct definition") {
  for (int s = 1; s <= 3; ++s) {
    const std::size_t m = s == 3 ? 8 : 16;
    const auto f = random_seq(m - 3, 100 + s);
    CHECK(gowers_uk_cyclic(f, s, m) == doctest::Approx(brute_cyclic(f, s, m)).epsilon(1e-12));
  }
  CHECK(gowers_uk_cyclic(random_seq(10, 1), 1, 10) == doctest::Approx(brute_cyclic(random_seq(10, 1), 1, 10)));
  CHECK_THROWS_AS(gowers_uk_cyclic(random_seq(10, 1), 2, 9), std::invalid_argument);
}

TEST_CASE("trivial cyclic values") {
  const auto ones = FiniteSeq::generate(64, [](std::size_t) { return 1.0; });
  for (int s = 1; s <= 3; ++s) CHECK(gowers_uk_cyclic(ones, s, 64) == doctest::Approx(1.0).epsilon(1e-12));
  const auto chi = FiniteSeq::generate(64, [](std::size_t n) { return unit_phase(5.0 * n / 64.0); });
  CHECK(gowers_uk_cyclic(chi, 2, 64) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(u2_via_fft(ones, 64) == doctest::Approx(1.0).epsilon(1e-12));
  const auto chi3 = FiniteSeq::generate(64, [](std::size_t n) { return unit_phase(3.0 * n / 64.0); });
  CHECK(u2_via_fft(chi3, 64) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(u2_via_fft(ones, 96), std::invalid_argument);
  CHECK_THROWS_AS(u2_via_fft(ones, 32), std::invalid_argument);
}

TEST_CASE("u2 via fft equals the recursive norm") {
  const std::size_t moduli[] = {64, 256, 4096};
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t m = moduli[seed % 3];
    const auto f = random_seq(m / 2 + seed, seed, seed % 2 == 0);
    const double a = u2_via_fft(f, m), b = gowers_uk_cyclic(f, 2, m);
    CHECK(std::abs(a - b) <= 1e-9 * b);
  }
}

TEST_CASE("norm nesting, modulation and scaling") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = random_seq(64, 50 + seed);
    CHECK(gowers_uk_cyclic(f, 2, 64) <= gowers_uk_cyclic(f, 3, 64) + 1e-12);
    const auto g = FiniteSeq::generate(64, [&](std::size_t n) { return f[n] * unit_phase(7.0 * n / 64.0); });
    CHECK(std::abs(u2_via_fft(g, 64) - u2_via_fft(f, 64)) < 1e-12);
    CHECK(std::abs(gowers_uk_cyclic(g, 2, 64) - gowers_uk_cyclic(f, 2, 64)) < 1e-12);
    const auto h = FiniteSeq::generate(64, [&](std::size_t n) { return cplx(0.0, -2.5) * f[n]; });
    CHECK(gowers_uk_cyclic(h, 3, 64) == doctest::Approx(2.5 * gowers_uk_cyclic(f, 3, 64)).epsilon(1e-12));
    CHECK(u2_via_fft(h, 64) == doctest::Approx(2.5 * u2_via_fft(f, 64)).epsilon(1e-12));
  }
}

TEST_CASE("interval norms") {
  for (const std::size_t n : {4u, 17u, 64u, 1000u}) {
    const auto ones = FiniteSeq::generate(n, [](std::size_t) { return 1.0; });
    CHECK(gowers_uk_interval(ones, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gowers_uk_interval(ones, 3) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto f = random_seq(64, 9);
  for (const int s : {2, 3}) {
    const double base = gowers_uk_interval(f, s);
    const std::size_t m = s == 2 ? 256 : 512;
    CHECK(gowers_uk_interval(f, s, m) == doctest::Approx(base).epsilon(1e-12));
    CHECK(gowers_uk_interval(f, s, 2 * m) == doctest::Approx(base).epsilon(1e-9));
  }
  CHECK_THROWS_AS(gowers_uk_interval(f, 4), std::invalid_argument);
  CHECK_THROWS_AS(gowers_uk_interval(f, 2, 128), std::invalid_argument);
  const auto table = arith::build_sieve(100000);
  auto mu = [&](std::size_t n) { return FiniteSeq::generate(n, [&](std::size_t i) { return double(table.mu(i)); }); };
  const double small = gowers_uk_interval(mu(1000), 2), large = gowers_uk_interval(mu(100000), 2);
  CHECK(large < small);
  CHECK(large < 0.2);
}

TEST_CASE("cube count") {
  CHECK(cube_count(FiniteSeq(12), 1) == 0.0);
  const auto ind = FiniteSeq::generate(10, [](std::size_t n) { return n == 1 ? 1.0 : 0.0; });
  CHECK(cube_count(ind, 1) == 0.0);
  const auto alt = FiniteSeq::generate(16, [](std::size_t n) { return n % 2 ? -1.0 : 1.0; });
  CHECK(cube_count(alt, 1) == doctest::Approx(brute_cube_count(alt, 1)).epsilon(1e-14));
  CHECK(brute_cube_count(alt, 1) == doctest::Approx(560.0 / 4096.0).epsilon(1e-14));
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t n = 8 + 4 * seed;
    const int s = 1 + static_cast<int>(seed % 2);
    const auto f = random_seq(n, 70 + seed, seed % 3 == 0);
    const auto fr = FiniteSeq::generate(n, [&](std::size_t i) { return f[i].real(); });
    CHECK(cube_count(fr, s) == doctest::Approx(brute_cube_count(fr, s)).epsilon(1e-12));
    const auto refl = FiniteSeq::generate(n, [&](std::size_t i) { return fr[n + 1 - i]; });
    CHECK(cube_count(refl, s) == doctest::Approx(cube_count(fr, s)).epsilon(1e-12));
    const auto pos = FiniteSeq::generate(n, [&](std::size_t i) { return std::abs(fr[i].real()); });
    CHECK(cube_count(pos, s) >= 0.0);
  }
  CHECK_THROWS_AS(cube_count(FiniteSeq::generate(2000, [](std::size_t) { return 1.0; }), 1), resource_limit_error);
  CHECK_THROWS_AS(cube_count(FiniteSeq::generate(8, [](std::size_t) { return cplx(0, 1); }), 1), std::invalid_argument);
}

TEST_CASE("gowers-host-kra estimates") {
  namespace S = systems;
  for (int k = 1; k <= 3; ++k) {
    const GhkParams p{k, 20, 200};
    CHECK(ghk_estimate(S::Rotation{}, S::Constant{{0.0, -0.7}}, S::TorusPoint{{0.1}, std::nullopt}, p) ==
          doctest::Approx(0.7).epsilon(1e-12));
  }
  const GhkParams p{2, 1000, 100000};
  const double rot = ghk_estimate(S::Rotation{S::kGoldenAlpha}, S::Character{{1}}, S::TorusPoint{{0.0}, std::nullopt}, p);
  CHECK(std::abs(rot - 1.0) < 0.05);
  const S::SystemSpec d = S::Doubling{};
  CHECK(ghk_estimate(d, S::Character{{1}}, S::random_point(d, 5), p) < 0.1);
  CHECK_THROWS_AS(ghk_estimate(d, S::Character{{1}}, S::random_point(d, 5), GhkParams{4, 10, 10}), resource_limit_error);
  CHECK_THROWS_AS(ghk_estimate(d, S::Character{{1}}, S::random_point(d, 5), GhkParams{2, 100000, 100000}),
                  resource_limit_error);
}
