#include "erglab/cube/cube.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "erglab/errors.hpp"
#include "erglab/fft.hpp"
#include "erglab/parallel.hpp"
#include "erglab/simd/kernels.hpp"
#include "erglab/summation.hpp"

namespace erglab::cube {
namespace {

constexpr double kDirectLimit = 1.0e9;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_order(int k) {
  if (k < 1 || k > 6) throw std::invalid_argument("cube: order k must lie in [1, 6]");
}

std::size_t vertex_count(int k) { return (std::size_t{1} << k) - 1; }

void check_direct_cost(int k, std::size_t n) {
  const double cost = std::pow(static_cast<double>(n), k) * static_cast<double>(vertex_count(k));
  if (cost > kDirectLimit) throw resource_limit_error("cube_average_direct: N^k (2^k - 1) exceeds 1e9");
}

// Vertex i of vertex_set(k) is the mask i + 1, with coordinate j on bit k-1-j.
// The innermost coordinate k-1 is summed by the product kernel; every other
// vertex is folded into a running prefix product once its last coordinate is fixed.
class GridEvaluator {
 public:
  GridEvaluator(const std::vector<FiniteSeq>& seqs, int k, std::size_t n) : seqs_(seqs), k_(k), n_(n) {
    complete_at_.resize(static_cast<std::size_t>(k));
    for (std::size_t mask = 1; mask <= vertex_count(k); ++mask) {
      const int last = k - 1 - std::countr_zero(mask);
      complete_at_[static_cast<std::size_t>(last)].push_back(mask);
    }
  }

  cplx total() const {
    Offsets off{};
    if (k_ == 1) return innermost(off, cplx(1.0, 0.0));
    std::vector<cplx> per_first(n_);
    parallel_for(n_, [&](std::size_t i) { per_first[i] = step(0, i + 1, off, cplx(1.0, 0.0)); });
    return pairwise_sum(std::span<const cplx>(per_first));
  }

 private:
  using Offsets = std::array<std::size_t, 64>;

  std::size_t bit_of(int depth) const { return std::size_t{1} << (k_ - 1 - depth); }

  const cplx* row(std::size_t mask) const { return seqs_[mask - 1].data(); }

  // Assigns value v to coordinate `depth` and recurses.
  cplx step(int depth, std::size_t v, Offsets off, cplx prefix) const {
    const std::size_t bit = bit_of(depth);
    for (std::size_t mask = 1; mask <= vertex_count(k_); ++mask) {
      if (mask & bit) off[mask] += v;
    }
    for (const std::size_t mask : complete_at_[static_cast<std::size_t>(depth)]) prefix *= row(mask)[off[mask]];
    if (prefix == cplx(0.0, 0.0)) return prefix;
    if (depth + 1 == k_ - 1) return innermost(off, prefix);
    std::vector<cplx> parts(n_);
    for (std::size_t w = 1; w <= n_; ++w) parts[w - 1] = step(depth + 1, w, off, prefix);
    return pairwise_sum(std::span<const cplx>(parts));
  }

  cplx innermost(const Offsets& off, cplx prefix) const {
    const auto& masks = complete_at_[static_cast<std::size_t>(k_ - 1)];
    std::array<const cplx*, simd::kMaxRows> rows{};
    for (std::size_t j = 0; j < masks.size(); ++j) rows[j] = row(masks[j]) + off[masks[j]] + 1;
    return prefix * simd::product_sum(std::span<const cplx* const>(rows.data(), masks.size()), n_);
  }

  const std::vector<FiniteSeq>& seqs_;
  int k_;
  std::size_t n_;
  std::vector<std::vector<std::size_t>> complete_at_;
};

const weight::MangoldtPrimeWTricked& wtricked_weight(const CubeSpec& spec) {
  const auto* w = std::get_if<weight::MangoldtPrimeWTricked>(&spec.weight);
  if (w == nullptr) throw std::invalid_argument("ncsm: the weight must be mangoldt_prime_wtricked");
  return *w;
}

}  // namespace

std::vector<Vertex> vertex_set(int k) {
  check_order(k);
  std::vector<Vertex> out;
  for (std::size_t mask = 1; mask <= vertex_count(k); ++mask) {
    Vertex e(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) e[static_cast<std::size_t>(j)] = static_cast<int>((mask >> (k - 1 - j)) & 1u);
    out.push_back(std::move(e));
  }
  return out;
}

CubeSpec CubeSpec::uniform(int k, Weight w, const systems::SystemSpec& sys, const systems::Observable& f,
                           const systems::Point& x) {
  check_order(k);
  CubeSpec spec;
  spec.k = k;
  spec.weight = std::move(w);
  spec.systems.assign(vertex_count(k), sys);
  spec.observables.assign(vertex_count(k), f);
  spec.base_point = x;
  return spec;
}

void validate(const CubeSpec& spec) {
  check_order(spec.k);
  const std::size_t v = vertex_count(spec.k);
  if (spec.systems.size() != v || spec.observables.size() != v) {
    throw std::invalid_argument("CubeSpec: vertex maps must cover exactly 2^k - 1 vertices");
  }
}

FiniteSeq weight_sequence(const Weight& w, std::size_t len, const arith::SieveTable& table) {
  auto need = [&](std::uint64_t top) {
    if (top > table.n_max()) throw std::invalid_argument("weight: arguments exceed the sieve range");
  };
  return std::visit(
      Overloaded{
          [&](const weight::Ones&) { return FiniteSeq::generate(len, [](std::size_t) { return 1.0; }); },
          [&](const weight::Mobius&) {
            need(len);
            return FiniteSeq::generate(len, [&](std::size_t m) { return static_cast<double>(table.mu(m)); });
          },
          [&](const weight::Liouville&) {
            need(len);
            return FiniteSeq::generate(len, [&](std::size_t m) { return static_cast<double>(table.lambda(m)); });
          },
          [&](const weight::MangoldtPrime&) {
            need(len);
            return FiniteSeq::generate(len, [&](std::size_t m) { return table.mangoldt_prime(m); });
          },
          [&](const weight::MangoldtPrimeWTricked& t) {
            if (t.residue_index >= t.params.residues.size()) throw std::invalid_argument("weight: residue index out of range");
            const std::uint64_t r = t.params.residues[t.residue_index];
            need(t.params.W * len + r);
            return FiniteSeq::generate(len, [&](std::size_t m) { return arith::w_trick_weight(t.params, table, r, m); });
          },
          [&](const weight::Custom& c) {
            if (c.seq.size() < len) throw std::invalid_argument("weight: custom sequence too short");
            return FiniteSeq::generate(len, [&](std::size_t m) { return c.seq[m]; });
          },
      },
      w);
}

std::vector<FiniteSeq> vertex_sequences(const CubeSpec& spec, std::size_t n_max, const arith::SieveTable& table) {
  validate(spec);
  if (n_max == 0) throw std::invalid_argument("vertex_sequences: n_max must be positive");
  const std::size_t len = static_cast<std::size_t>(spec.k) * n_max;
  const FiniteSeq a = weight_sequence(spec.weight, len, table);
  std::vector<FiniteSeq> out;
  out.reserve(spec.systems.size());
  for (std::size_t i = 0; i < spec.systems.size(); ++i) {
    FiniteSeq s = systems::orbit_samples(spec.systems[i], spec.observables[i], spec.base_point, len);
    for (std::size_t m = 1; m <= len; ++m) s[m] *= a[m];
    out.push_back(std::move(s));
  }
  return out;
}

cplx grid_average(const std::vector<FiniteSeq>& seqs, int k, std::size_t n) {
  check_order(k);
  if (n == 0) throw std::invalid_argument("grid_average: N must be positive");
  if (seqs.size() != vertex_count(k)) throw std::invalid_argument("grid_average: wrong number of vertex sequences");
  for (const auto& s : seqs) {
    if (s.size() < static_cast<std::size_t>(k) * n) throw std::invalid_argument("grid_average: vertex sequence too short");
  }
  check_direct_cost(k, n);
  const GridEvaluator eval(seqs, k, n);
  return eval.total() / std::pow(static_cast<double>(n), k);
}

cplx cube_average_direct(const CubeSpec& spec, std::size_t n, const arith::SieveTable& table) {
  validate(spec);
  check_direct_cost(spec.k, n);
  return grid_average(vertex_sequences(spec, n, table), spec.k, n);
}

cplx fft_average_k2(const std::vector<FiniteSeq>& seqs, std::size_t n) {
  if (seqs.size() != 3) throw std::invalid_argument("fft_average_k2: expected three vertex sequences");
  if (n == 0) throw std::invalid_argument("fft_average_k2: N must be positive");
  const FiniteSeq& s01 = seqs[0];
  const FiniteSeq& s10 = seqs[1];
  const FiniteSeq& s11 = seqs[2];
  if (s11.size() < 2 * n || s01.size() < n || s10.size() < n) {
    throw std::invalid_argument("fft_average_k2: vertex sequence too short");
  }
  // conv[i] = sum_{a + b = i + 2} s10(a) s01(b), a, b in [1, N].
  const std::vector<cplx> conv = convolve(s10.terms().first(n), s01.terms().first(n));
  std::vector<cplx> terms(2 * n - 1);
  for (std::size_t t = 2; t <= 2 * n; ++t) terms[t - 2] = s11[t] * conv[t - 2];
  return pairwise_sum(std::span<const cplx>(terms)) / (static_cast<double>(n) * static_cast<double>(n));
}

cplx cube_average_fft_k2(const CubeSpec& spec, std::size_t n, const arith::SieveTable& table) {
  if (spec.k != 2) throw std::invalid_argument("cube_average_fft_k2: requires k = 2");
  return fft_average_k2(vertex_sequences(spec, n, table), n);
}

cplx ncsm_average(const CubeSpec& spec, std::size_t residue_index, std::size_t n, const arith::SieveTable& table) {
  validate(spec);
  const auto& w = wtricked_weight(spec);
  if (residue_index >= w.params.residues.size()) throw std::invalid_argument("ncsm: residue index out of range");
  const std::size_t len = static_cast<std::size_t>(spec.k) * n;
  const std::uint64_t r = w.params.residues[residue_index];
  if (w.params.W * len + r > table.n_max()) throw std::invalid_argument("ncsm: W k N + r exceeds the sieve range");
  check_direct_cost(spec.k, n);

  weight::MangoldtPrimeWTricked active = w;
  active.residue_index = residue_index;
  FiniteSeq a = weight_sequence(active, len, table);
  for (std::size_t m = 1; m <= len; ++m) a[m] -= 1.0;

  std::vector<FiniteSeq> seqs;
  for (std::size_t i = 0; i < spec.systems.size(); ++i) {
    FiniteSeq s = systems::orbit_samples(spec.systems[i], spec.observables[i], spec.base_point, len);
    for (std::size_t m = 1; m <= len; ++m) s[m] *= a[m];
    seqs.push_back(std::move(s));
  }
  return grid_average(seqs, spec.k, n);
}

NcsmResult ncsm_residue_average(const CubeSpec& spec, std::size_t n, const arith::SieveTable& table) {
  const auto& w = wtricked_weight(spec);
  NcsmResult out;
  for (std::size_t i = 0; i < w.params.residues.size(); ++i) out.per_residue.push_back(ncsm_average(spec, i, n, table));
  out.average = pairwise_sum(std::span<const cplx>(out.per_residue)) / static_cast<double>(out.per_residue.size());
  return out;
}

WTrickCheck wtrick_decomposition_check(const FiniteSeq& a, const arith::WTrickParams& params, std::size_t n,
                                       const arith::SieveTable& table) {
  if (n == 0) throw std::invalid_argument("wtrick_decomposition_check: N must be positive");
  const std::uint64_t W = params.W;
  const std::uint64_t top = W * n + W;
  if (a.size() < top) throw std::invalid_argument("wtrick_decomposition_check: sequence shorter than W N + W");
  if (top > table.n_max()) throw std::invalid_argument("wtrick_decomposition_check: W N + W exceeds the sieve range");
  const double wn = static_cast<double>(W * n);
  const double nd = static_cast<double>(n);
  const double phi = static_cast<double>(params.phi_W);

  std::vector<cplx> lhs_terms(W * n);
  for (std::size_t m = 1; m <= W * n; ++m) lhs_terms[m - 1] = table.mangoldt_prime(m) * a[m];
  const cplx lhs = pairwise_sum(std::span<const cplx>(lhs_terms)) / wn;

  std::vector<cplx> deviation(params.residues.size()), mean(params.residues.size());
  std::vector<cplx> dev_terms(n), mean_terms(n);
  for (std::size_t i = 0; i < params.residues.size(); ++i) {
    const std::uint64_t r = params.residues[i];
    for (std::size_t q = 1; q <= n; ++q) {
      const cplx av = a[W * q + r];
      dev_terms[q - 1] = (arith::w_trick_weight(params, table, r, q) - 1.0) * av;
      mean_terms[q - 1] = av;
    }
    deviation[i] = pairwise_sum(std::span<const cplx>(dev_terms)) / nd;
    mean[i] = pairwise_sum(std::span<const cplx>(mean_terms)) / nd;
  }
  const cplx rhs = (pairwise_sum(std::span<const cplx>(deviation)) + pairwise_sum(std::span<const cplx>(mean))) / phi;

  // Leftover: classes sharing a factor with W, the n = 0 heads r < W that the
  // residue split skips, and the tails W N + r that it adds.
  std::vector<cplx> left;
  for (std::size_t m = 1; m <= W * n; ++m) {
    if (std::gcd<std::uint64_t, std::uint64_t>(m, W) != 1 && table.mangoldt_prime(m) != 0.0) {
      left.push_back(table.mangoldt_prime(m) * a[m]);
    }
  }
  for (const std::uint64_t r : params.residues) {
    if (r == 0) continue;
    left.push_back(table.mangoldt_prime(r) * a[r]);
    left.push_back(-table.mangoldt_prime(W * n + r) * a[W * n + r]);
  }
  const cplx boundary = pairwise_sum(std::span<const cplx>(left)) / wn;
  return {lhs, rhs, boundary};
}

AverageSeries decay_series(const CubeSpec& spec, const std::vector<std::size_t>& n_list,
                           const arith::SieveTable& table) {
  validate(spec);
  AverageSeries out;
  if (n_list.empty()) return out;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] == 0 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw std::invalid_argument("decay_series: N values must be positive and strictly increasing");
    }
  }
  if (spec.k != 2) {
    for (const std::size_t n : n_list) check_direct_cost(spec.k, n);
  }
  // s_e(m) does not depend on N, so one precomputation serves the whole list.
  const auto seqs = vertex_sequences(spec, n_list.back(), table);
  for (const std::size_t n : n_list) {
    const cplx v = spec.k == 2 ? fft_average_k2(seqs, n) : grid_average(seqs, spec.k, n);
    out.entries.emplace_back(n, v);
  }
  return out;
}

double mangoldt_prime_scale(int k, std::size_t n, const arith::SieveTable& table) {
  check_order(k);
  const std::size_t top = static_cast<std::size_t>(k) * n;
  if (top < 2 || top > table.n_max()) throw std::invalid_argument("mangoldt_prime_scale: k N outside the sieve range");
  const double mean = table.upsilon_at(top) / static_cast<double>(top);
  return std::pow(mean, static_cast<double>(vertex_count(k)));
}

BetaProduct beta_product(int k, std::uint64_t p_max, std::uint64_t p_min) {
  if (k < 1 || k > 4) throw std::invalid_argument("beta_product: k must lie in [1, 4]");
  if (p_max > 97) throw std::invalid_argument("beta_product: p_max must be at most 97");
  BetaProduct out;
  for (std::uint64_t p = std::max<std::uint64_t>(2, p_min); p <= p_max; ++p) {
    if (!arith::is_prime_trial(p)) continue;
    const double b = arith::beta_p(p, k);
    out.factors.emplace_back(p, b);
    out.partial *= b;
  }
  return out;
}

}  // namespace erglab::cube
