#include "doctest.h"

#include <cmath>
#include <random>

#include "erglab/arith/sieve.hpp"
#include "erglab/cube/cube.hpp"
#include "erglab/errors.hpp"
#include "erglab/parallel.hpp"

using namespace erglab;
using namespace erglab::cube;
namespace S = erglab::systems;

namespace {

const arith::SieveTable& table() {
  static const auto t = arith::build_sieve(200000);
  return t;
}

// Literal definition: nested loops over [1,N]^k, every factor evaluated from scratch.
cplx brute_average(const CubeSpec& spec, std::size_t n) {
  const int k = spec.k;
  const auto verts = vertex_set(k);
  const FiniteSeq w = weight_sequence(spec.weight, k * n, table());
  std::vector<std::size_t> idx(k, 1);
  std::complex<long double> acc = 0;
  while (true) {
    cplx prod = 1.0;
    for (std::size_t v = 0; v < verts.size(); ++v) {
      std::size_t m = 0;
      for (int j = 0; j < k; ++j) m += verts[v][j] * idx[j];
      prod *= w[m] * S::evaluate(spec.observables[v], S::iterate(spec.systems[v], spec.base_point, m));
    }
    acc += std::complex<long double>(prod.real(), prod.imag());
    int d = 0;
    while (d < k && ++idx[d] > n) idx[d++] = 1;
    if (d == k) break;
  }
  const long double norm = std::pow(static_cast<long double>(n), k);
  return cplx(static_cast<double>(acc.real() / norm), static_cast<double>(acc.imag() / norm));
}

CubeSpec random_spec(int k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> freq(-3, 3);
  const Weight weights[] = {weight::Ones{}, weight::Mobius{}, weight::Liouville{}, weight::MangoldtPrime{}};
  CubeSpec spec;
  spec.k = k;
  spec.weight = weights[seed % 4];
  for (std::size_t v = 0; v < (std::size_t{1} << k) - 1; ++v) {
    spec.systems.push_back(S::Skew{u(rng), u(rng)});
    spec.observables.push_back(S::Character{{freq(rng), freq(rng)}});
  }
  spec.base_point = S::TorusPoint{{u(rng), u(rng)}, std::nullopt};
  return spec;
}

bool rel_close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("vertex set order") {
  const auto v2 = vertex_set(2);
  REQUIRE(v2.size() == 3);
  CHECK(v2[0] == Vertex{0, 1});
  CHECK(v2[1] == Vertex{1, 0});
  CHECK(v2[2] == Vertex{1, 1});
  CHECK(vertex_set(1) == std::vector<Vertex>{{1}});
  CHECK(vertex_set(6).size() == 63);
  CHECK(vertex_set(3)[3] == Vertex{1, 0, 0});
  CHECK_THROWS_AS(vertex_set(0), std::invalid_argument);
  CHECK_THROWS_AS(vertex_set(7), std::invalid_argument);
}

TEST_CASE("direct grid sum matches the literal definition") {
  for (int k = 1; k <= 3; ++k) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto spec = random_spec(k, 10 * k + seed);
      const std::size_t n = k == 3 ? 12 : 40;
      CHECK(rel_close(cube_average_direct(spec, n, table()), brute_average(spec, n), 1e-11));
    }
  }
}

TEST_CASE("fft and direct paths agree at k = 2") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto spec = random_spec(2, 500 + seed);
    for (const std::size_t n : {1u, 7u, 256u}) {
      CHECK(rel_close(cube_average_fft_k2(spec, n, table()), cube_average_direct(spec, n, table()), 1e-9));
    }
  }
  CHECK_THROWS_AS(cube_average_fft_k2(random_spec(3, 1), 16, table()), std::invalid_argument);
}

TEST_CASE("normalization with constant observables") {
  const S::SystemSpec rot = S::Rotation{};
  auto spec = CubeSpec::uniform(2, weight::Ones{}, rot, S::Constant{{1.0, 0.0}}, S::origin_point(rot));
  CHECK(cube_average_direct(spec, 300, table()) == cplx(1.0, 0.0));
  CHECK(std::abs(cube_average_fft_k2(spec, 300, table()) - 1.0) < 1e-12);
  spec.observables = {S::Constant{{2.0, 0.0}}, S::Constant{{0.5, 0.0}}, S::Constant{{1.25, 0.0}}};
  CHECK(cube_average_direct(spec, 64, table()) == cplx(1.25, 0.0));
  auto spec3 = CubeSpec::uniform(3, weight::Ones{}, rot, S::Constant{{1.0, 0.0}}, S::origin_point(rot));
  CHECK(cube_average_direct(spec3, 50, table()) == cplx(1.0, 0.0));
}

TEST_CASE("linearity and symmetry") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto spec = random_spec(2, 900 + seed);
    auto seqs = vertex_sequences(spec, 128, table());
    const cplx base = grid_average(seqs, 2, 128);
    const cplx a(0.3, -1.7);
    for (std::size_t e0 = 0; e0 < 3; ++e0) {
      auto scaled = seqs;
      for (std::size_t m = 1; m <= scaled[e0].size(); ++m) scaled[e0][m] *= a;
      CHECK(rel_close(grid_average(scaled, 2, 128), a * base, 1e-12));
    }
    auto swapped = seqs;
    std::swap(swapped[0], swapped[1]);
    CHECK(rel_close(grid_average(swapped, 2, 128), base, 1e-12));
  }
  const S::SystemSpec rot = S::Rotation{S::kGoldenAlpha};
  const auto spec = CubeSpec::uniform(3, weight::Mobius{}, rot, S::Character{{1}}, S::origin_point(rot));
  auto seqs = vertex_sequences(spec, 40, table());
  const cplx base = grid_average(seqs, 3, 40);
  // Permuting coordinates permutes vertices: swap e1 <-> e3 maps (0,0,1)<->(1,0,0), (0,1,1)<->(1,1,0).
  auto perm = seqs;
  std::swap(perm[0], perm[3]);
  std::swap(perm[2], perm[5]);
  CHECK(rel_close(grid_average(perm, 3, 40), base, 1e-12));
}

TEST_CASE("grid sums are bitwise independent of the thread count") {
  const auto spec = random_spec(3, 77);
  const auto seqs = vertex_sequences(spec, 60, table());
  set_thread_count(1);
  const cplx one = grid_average(seqs, 3, 60);
  set_thread_count(5);
  const cplx five = grid_average(seqs, 3, 60);
  set_thread_count(1);
  CHECK(one == five);
}

TEST_CASE("weights") {
  const auto w6 = arith::make_w_trick(6);
  const FiniteSeq a = weight_sequence(weight::MangoldtPrimeWTricked{w6, 1}, 20, table());
  for (std::size_t m = 1; m <= 20; ++m) CHECK(std::abs(a[m] - table().mangoldt_prime(6 * m + 5) / 3.0) < 1e-15);
  const FiniteSeq mu = weight_sequence(weight::Mobius{}, 10, table());
  CHECK(mu[4] == cplx(0.0, 0.0));
  CHECK(mu[6] == cplx(1.0, 0.0));
  const FiniteSeq custom = FiniteSeq::generate(5, [](std::size_t n) { return cplx(n, -1.0); });
  CHECK(weight_sequence(weight::Custom{custom}, 5, table())[3] == cplx(3.0, -1.0));
  CHECK_THROWS_AS(weight_sequence(weight::Custom{custom}, 6, table()), std::invalid_argument);
  CHECK_THROWS_AS(weight_sequence(weight::Mobius{}, 200001, table()), std::invalid_argument);
  CHECK_THROWS_AS(weight_sequence(weight::MangoldtPrimeWTricked{w6, 2}, 5, table()), std::invalid_argument);
}

TEST_CASE("feasibility envelope") {
  const S::SystemSpec rot = S::Rotation{};
  const auto spec = CubeSpec::uniform(3, weight::Ones{}, rot, S::Character{{1}}, S::origin_point(rot));
  CHECK_THROWS_AS(cube_average_direct(spec, 1024, table()), resource_limit_error);
  CubeSpec bad = spec;
  bad.systems.pop_back();
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("ncsm averages") {
  const S::SystemSpec rot = S::Rotation{S::kGoldenAlpha};
  const auto w6 = arith::make_w_trick(6);
  const auto spec = CubeSpec::uniform(2, weight::MangoldtPrimeWTricked{w6, 0}, rot, S::Character{{1}}, S::origin_point(rot));
  const auto res = ncsm_residue_average(spec, 200, table());
  REQUIRE(res.per_residue.size() == 2);
  CHECK(rel_close(res.average, (res.per_residue[0] + res.per_residue[1]) / 2.0, 1e-15));
  for (std::size_t i = 0; i < 2; ++i) {
    // Same average through a custom weight Lambda'_{b,W} - 1.
    FiniteSeq shifted = weight_sequence(weight::MangoldtPrimeWTricked{w6, i}, 400, table());
    for (std::size_t m = 1; m <= 400; ++m) shifted[m] -= 1.0;
    auto custom = spec;
    custom.weight = weight::Custom{shifted};
    CHECK(rel_close(res.per_residue[i], cube_average_direct(custom, 200, table()), 1e-12));
  }
  auto wrong = spec;
  wrong.weight = weight::Mobius{};
  CHECK_THROWS_AS(ncsm_residue_average(wrong, 10, table()), std::invalid_argument);
}

TEST_CASE("w-trick decomposition identity") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const std::uint64_t W : {1u, 2u, 6u, 30u, 210u}) {
    const auto params = arith::make_w_trick(W);
    for (const std::size_t n : {1u, 10u, 333u}) {
      const auto a = FiniteSeq::generate(W * n + W, [&](std::size_t) { return cplx(u(rng), u(rng)); });
      const auto c = wtrick_decomposition_check(a, params, n, table());
      CHECK(std::abs(c.lhs - c.rhs - c.boundary) < 1e-12);
    }
  }
  const auto ones = FiniteSeq::generate(102, [](std::size_t) { return 1.0; });
  const auto c = wtrick_decomposition_check(ones, arith::make_w_trick(2), 50, table());
  CHECK(c.boundary.real() == doctest::Approx((std::log(2.0) - std::log(101.0)) / 100.0).epsilon(1e-14));
  CHECK(c.boundary.imag() == 0.0);
  CHECK_THROWS_AS(wtrick_decomposition_check(ones, arith::make_w_trick(2), 51, table()), std::invalid_argument);
}

TEST_CASE("decay series and scales") {
  const auto spec = random_spec(2, 31);
  const auto series = decay_series(spec, {16, 64, 100}, table());
  REQUIRE(series.entries.size() == 3);
  CHECK(series.entries[2].first == 100);
  CHECK(rel_close(series.entries[1].second, cube_average_direct(spec, 64, table()), 1e-9));
  const auto s3 = decay_series(random_spec(3, 32), {8, 16}, table());
  CHECK(rel_close(s3.entries[0].second, cube_average_direct(random_spec(3, 32), 8, table()), 1e-13));
  CHECK_THROWS_AS(decay_series(spec, {64, 16}, table()), std::invalid_argument);
  const double scale = mangoldt_prime_scale(2, 1000, table());
  CHECK(scale == doctest::Approx(std::pow(table().upsilon_at(2000) / 2000.0, 3)).epsilon(1e-15));
}

TEST_CASE("beta product") {
  const auto k1 = beta_product(1, 97);
  CHECK(k1.partial == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [p, b] : k1.factors) CHECK(b == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(beta_product(2, 2).partial == 0.0);
  CHECK(beta_product(2, 97).partial == 0.0);
  const auto odd = beta_product(2, 7, 3);
  CHECK(odd.factors.size() == 3);
  CHECK(odd.partial == doctest::Approx(0.75 * 0.9375 * 35.0 / 36.0).epsilon(1e-14));
  CHECK_THROWS_AS(beta_product(2, 101), std::invalid_argument);
  CHECK_THROWS_AS(beta_product(5, 7), std::invalid_argument);
}
