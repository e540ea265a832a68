#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "erglab/arith/sieve.hpp"
#include "erglab/arith/wtrick.hpp"
#include "erglab/finite_seq.hpp"
#include "erglab/systems/systems.hpp"

namespace erglab::cube {

using Vertex = std::vector<int>;

/// Nonzero 0/1 vectors of length k (1 <= k <= 6) in lexicographic order.
std::vector<Vertex> vertex_set(int k);

namespace weight {
struct Ones {};
struct Mobius {};
struct Liouville {};
struct MangoldtPrime {};
/// Lambda'_{r,W}(m) = (phi(W)/W) Lambda'(W m + r) for r = params.residues[residue_index].
struct MangoldtPrimeWTricked {
  arith::WTrickParams params;
  std::size_t residue_index = 0;
};
struct Custom {
  FiniteSeq seq;
};
}  // namespace weight

using Weight = std::variant<weight::Ones, weight::Mobius, weight::Liouville, weight::MangoldtPrime,
                            weight::MangoldtPrimeWTricked, weight::Custom>;

/// Data of a weighted cube average of order k. systems[i] and observables[i]
/// belong to vertex_set(k)[i].
struct CubeSpec {
  int k = 2;
  Weight weight = weight::Ones{};
  std::vector<systems::SystemSpec> systems;
  std::vector<systems::Observable> observables;
  systems::Point base_point = systems::TorusPoint{{0.0}, std::nullopt};

  /// Every vertex gets the same system and observable.
  static CubeSpec uniform(int k, Weight w, const systems::SystemSpec& sys, const systems::Observable& f,
                          const systems::Point& x);
};

/// Throws std::invalid_argument when the vertex maps do not cover C*.
void validate(const CubeSpec& spec);

/// A(m) for m = 1..len.
FiniteSeq weight_sequence(const Weight& w, std::size_t len, const arith::SieveTable& table);

/// s_e(m) = A(m) f_e(T_e^m x) for m = 1..k n_max, one sequence per vertex.
std::vector<FiniteSeq> vertex_sequences(const CubeSpec& spec, std::size_t n_max, const arith::SieveTable& table);

/// sum_{n in [1,N]^k} prod_e s_e(n.e) / N^k for precomputed vertex sequences
/// (each of length >= k N).
cplx grid_average(const std::vector<FiniteSeq>& seqs, int k, std::size_t n);

/// Direct grid evaluation. Requires N^k (2^k - 1) <= 1e9.
cplx cube_average_direct(const CubeSpec& spec, std::size_t n, const arith::SieveTable& table);

/// k = 2 via sum_t s_11(t) (s_10 * s_01)(t) with a zero-padded FFT convolution.
cplx cube_average_fft_k2(const CubeSpec& spec, std::size_t n, const arith::SieveTable& table);
cplx fft_average_k2(const std::vector<FiniteSeq>& seqs, std::size_t n);

struct NcsmResult {
  cplx average;                    // mean over residues
  std::vector<cplx> per_residue;   // in params.residues order
};

/// Grid average with s_e(m) = (Lambda'_{b_i,W}(m) - 1) f_e(T_e^m x); spec.weight must be W-tricked.
cplx ncsm_average(const CubeSpec& spec, std::size_t residue_index, std::size_t n, const arith::SieveTable& table);
NcsmResult ncsm_residue_average(const CubeSpec& spec, std::size_t n, const arith::SieveTable& table);

struct WTrickCheck {
  cplx lhs;       // (1/(W N)) sum_{m <= W N} Lambda'(m) a_m
  cplx rhs;       // residue split: deviation term plus mean term
  cplx boundary;  // explicitly summed leftover terms, lhs = rhs + boundary
};

/// Requires a.size() >= W N + W and W N + W <= n_max.
WTrickCheck wtrick_decomposition_check(const FiniteSeq& a, const arith::WTrickParams& params, std::size_t n,
                                       const arith::SieveTable& table);

struct AverageSeries {
  std::vector<std::pair<std::size_t, cplx>> entries;
};

/// A_N for each N (strictly increasing), by FFT at k = 2 and directly otherwise.
AverageSeries decay_series(const CubeSpec& spec, const std::vector<std::size_t>& n_list,
                           const arith::SieveTable& table);

/// (mean of Lambda' on [1, k N])^{2^k - 1}: the scale of a raw Lambda'-weighted average.
double mangoldt_prime_scale(int k, std::size_t n, const arith::SieveTable& table);

struct BetaProduct {
  double partial = 1.0;
  std::vector<std::pair<std::uint64_t, double>> factors;
};

/// prod of beta_p(p, k) over primes p_min <= p <= p_max; k <= 4, p_max <= 97.
BetaProduct beta_product(int k, std::uint64_t p_max, std::uint64_t p_min = 2);

}  // namespace erglab::cube
