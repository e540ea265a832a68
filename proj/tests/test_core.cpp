#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "erglab/detail/double_double.hpp"
#include "erglab/fft.hpp"
#include "erglab/finite_seq.hpp"
#include "erglab/parallel.hpp"
#include "erglab/summation.hpp"

using erglab::cplx;

namespace {

std::vector<cplx> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  return v;
}

std::vector<cplx> naive_dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<long double> acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double ang = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>((j * k) % n) / n;
      acc += std::complex<long double>(x[j].real(), x[j].imag()) * std::polar(1.0L, ang);
    }
    out[k] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return out;
}

}  // namespace

TEST_CASE("finite sequences are one-based") {
  auto s = erglab::FiniteSeq::generate(5, [](std::size_t n) { return cplx(static_cast<double>(n), 0.0); });
  CHECK(s.size() == 5);
  CHECK(s[1] == cplx(1.0, 0.0));
  CHECK(s[5] == cplx(5.0, 0.0));
  CHECK(s.terms().size() == 5);
  CHECK(s.sup_norm() == 5.0);
  CHECK(s.is_real());
  CHECK(s.all_finite());
}

TEST_CASE("unit phase is periodic and reduced") {
  CHECK(std::abs(erglab::unit_phase(0.25) - cplx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(erglab::unit_phase(1e6 + 0.25) - cplx(0.0, 1.0)) < 1e-9);
  CHECK(std::abs(erglab::unit_phase(-0.5) - cplx(-1.0, 0.0)) < 1e-15);
  CHECK(erglab::frac(-0.25) == doctest::Approx(0.75));
}

TEST_CASE("fft matches a naive dft") {
  for (const std::size_t n : {1u, 2u, 8u, 64u, 256u}) {
    const auto x = random_vec(n, static_cast<unsigned>(n));
    auto y = x;
    erglab::Fft f(n);
    f.forward(y);
    const auto ref = naive_dft(x);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(y[k] - ref[k]) < 1e-12 * static_cast<double>(n));
    f.inverse(y);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(y[k] - x[k]) < 1e-13);
  }
  CHECK_THROWS_AS(erglab::Fft(12), std::invalid_argument);
}

TEST_CASE("convolution matches the direct sum") {
  const auto a = random_vec(37, 1);
  const auto b = random_vec(50, 2);
  const auto c = erglab::convolve(a, b);
  REQUIRE(c.size() == 86);
  for (std::size_t t = 0; t < c.size(); ++t) {
    cplx ref = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (t >= i && t - i < b.size()) ref += a[i] * b[t - i];
    }
    CHECK(std::abs(c[t] - ref) < 1e-12);
  }
}

TEST_CASE("pairwise and compensated sums") {
  std::vector<double> xs(100000, 0.1);
  CHECK(std::abs(erglab::pairwise_sum(std::span<const double>(xs)) - 10000.0) < 1e-9);
  erglab::CompensatedSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);
  CHECK(erglab::pairwise_sum(std::span<const double>()) == 0.0);
}

TEST_CASE("parallel_for visits every index once") {
  for (const std::size_t threads : {1u, 3u, 8u}) {
    erglab::set_thread_count(threads);
    std::vector<int> hits(1000, 0);
    erglab::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (const int h : hits) CHECK(h == 1);
  }
  erglab::set_thread_count(1);
}

TEST_CASE("double-double products keep the low digits") {
  using namespace erglab::detail;
  // (2^30 + 1)^2 = 2^60 + 2^31 + 1 is not representable in a double.
  const DoubleDouble a{1073741825.0, 0.0};
  const DoubleDouble p = dd_mul(a, 1073741825.0);
  CHECK(dd_floor(dd_add(p, DoubleDouble{-1152921504606846976.0, 0.0})) == 2147483649.0);
  CHECK(dd_frac(DoubleDouble{3.0, 0.25}) == 0.25);
  CHECK(dd_frac(DoubleDouble{3.0, -0.25}) == 0.75);
}
