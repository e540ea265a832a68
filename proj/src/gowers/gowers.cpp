#include "erglab/gowers/gowers.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "erglab/errors.hpp"
#include "erglab/fft.hpp"
#include "erglab/parallel.hpp"
#include "erglab/simd/kernels.hpp"
#include "erglab/summation.hpp"

namespace erglab::gowers {
namespace {

constexpr double kCubeCountLimit = 1.0e9;
constexpr double kCyclicLimit = 4.0e9;

// Depth-first enumeration of (n, n_0, ..., n_s). sums[mask] is the argument of
// vertex mask; any argument above N makes the product vanish. Since every n_i is
// at least 1, the all-ones vertex carries the largest argument.
struct CubeCounter {
  const std::vector<double>& f;
  std::size_t n;
  int coords;  // s + 1
  std::array<std::size_t, 64> sums{};
  std::array<double, 64> partial{};  // product over vertices with support in the first d coords

  double run(int depth) {
    const std::size_t lo = std::size_t{1} << depth;
    if (depth == coords) return partial[lo - 1];
    double total = 0.0;
    for (std::size_t v = 1; v <= n; ++v) {
      if (sums[lo - 1] + v > n) break;
      double prod = partial[lo - 1];
      for (std::size_t mask = 0; mask < lo; ++mask) {
        const std::size_t arg = sums[mask] + v;
        sums[mask | lo] = arg;
        prod *= f[arg];
      }
      if (prod == 0.0) continue;
      partial[2 * lo - 1] = prod;
      total += run(depth + 1);
    }
    return total;
  }
};

// ||g||_{U^s}^{2^s} on Z_m; g has length m.
double cyclic_power(const std::vector<cplx>& g, int s) {
  const std::size_t m = g.size();
  if (s == 1) return std::norm(pairwise_sum(std::span<const cplx>(g)) / static_cast<double>(m));
  std::vector<cplx> doubled(2 * m);
  std::copy(g.begin(), g.end(), doubled.begin());
  std::copy(g.begin(), g.end(), doubled.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<double> per_h(m);
  if (s == 2) {
    parallel_for(m, [&](std::size_t h) {
      const cplx c = simd::dot_conj(doubled.data(), doubled.data() + h, m) / static_cast<double>(m);
      per_h[h] = std::norm(c);
    });
  } else {
    for (std::size_t h = 0; h < m; ++h) {
      std::vector<cplx> delta(m);
      simd::mul_conj(delta.data(), doubled.data(), doubled.data() + h, m);
      per_h[h] = cyclic_power(delta, s - 1);
    }
  }
  return pairwise_sum(std::span<const double>(per_h)) / static_cast<double>(m);
}

std::vector<cplx> embed(const FiniteSeq& f, std::size_t m) {
  std::vector<cplx> g(m, cplx(0.0, 0.0));
  // Site x in Z_m holds f(x); f(m) would wrap onto 0 when N = m.
  for (std::size_t i = 1; i <= f.size(); ++i) g[i % m] = f[i];
  return g;
}

double u2_power_fft(std::vector<cplx> g, const Fft& fft) {
  fft.forward(g);
  const double inv_m = 1.0 / static_cast<double>(g.size());
  for (auto& v : g) v *= inv_m;
  return simd::abs4_sum(g.data(), g.size());
}

// ||g||_{U^3(Z_m)}^8 = E_h ||Delta_h g||_{U^2}^4, each inner norm via FFT.
double u3_power_fft(const std::vector<cplx>& g, const Fft& fft) {
  const std::size_t m = g.size();
  std::vector<cplx> doubled(2 * m);
  std::copy(g.begin(), g.end(), doubled.begin());
  std::copy(g.begin(), g.end(), doubled.begin() + static_cast<std::ptrdiff_t>(m));
  std::vector<double> per_h(m);
  parallel_for(m, [&](std::size_t h) {
    std::vector<cplx> delta(m);
    simd::mul_conj(delta.data(), doubled.data(), doubled.data() + h, m);
    per_h[h] = u2_power_fft(std::move(delta), fft);
  });
  return pairwise_sum(std::span<const double>(per_h)) / static_cast<double>(m);
}

}  // namespace

double cube_count(const FiniteSeq& f, int s) {
  if (s < 1) throw std::invalid_argument("cube_count: s must be at least 1");
  if (s > 5) throw resource_limit_error("cube_count: s too large");
  const std::size_t n = f.size();
  if (!f.is_real() || f.sup_norm() > 1.0) throw std::invalid_argument("cube_count: f must be real with |f| <= 1");
  const double cost = std::pow(static_cast<double>(n), s + 2);
  if (cost > kCubeCountLimit) throw resource_limit_error("cube_count: N^{s+2} exceeds 1e9");

  // f extended by zero up to the largest reachable argument.
  std::vector<double> fr(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) fr[i] = f[i].real();

  std::vector<double> per_n(n, 0.0);
  parallel_for(n, [&](std::size_t idx) {
    const std::size_t base = idx + 1;
    if (fr[base] == 0.0) return;
    CubeCounter c{fr, n, s + 1};
    c.sums[0] = base;
    c.partial[0] = fr[base];
    per_n[idx] = c.run(0);
  });
  return pairwise_sum(std::span<const double>(per_n)) / cost;
}

double gowers_uk_cyclic(const FiniteSeq& f, int s, std::size_t m) {
  if (s < 1) throw std::invalid_argument("gowers_uk_cyclic: s must be at least 1");
  if (m < f.size()) throw std::invalid_argument("gowers_uk_cyclic: modulus smaller than the sequence");
  if (std::pow(static_cast<double>(m), s) > kCyclicLimit) {
    throw resource_limit_error("gowers_uk_cyclic: m^s exceeds the direct-evaluation limit");
  }
  const double power = cyclic_power(embed(f, m), s);
  return std::pow(std::max(power, 0.0), 1.0 / std::ldexp(1.0, s));
}

double u2_via_fft(const FiniteSeq& f, std::size_t m) {
  if (!is_power_of_two(m)) throw std::invalid_argument("u2_via_fft: modulus must be a power of two");
  if (m < f.size()) throw std::invalid_argument("u2_via_fft: modulus smaller than the sequence");
  const Fft fft(m);
  return std::pow(u2_power_fft(embed(f, m), fft), 0.25);
}

double gowers_uk_interval(const FiniteSeq& f, int s, std::size_t modulus) {
  if (s != 2 && s != 3) throw std::invalid_argument("gowers_uk_interval: s must be 2 or 3");
  const std::size_t n = f.size();
  if (n < 4) throw std::invalid_argument("gowers_uk_interval: N must be at least 4");
  const std::size_t min_m = next_power_of_two((std::size_t{1} << s) * n);
  const std::size_t m = modulus == 0 ? min_m : modulus;
  if (!is_power_of_two(m) || m < min_m) {
    throw std::invalid_argument("gowers_uk_interval: modulus must be a power of two >= 2^s N");
  }
  if (s == 3 && m > (std::size_t{1} << 15)) throw resource_limit_error("gowers_uk_interval: U^3 modulus too large");
  const Fft fft(m);
  const FiniteSeq ones = FiniteSeq::generate(n, [](std::size_t) { return 1.0; });
  double num = 0.0, den = 0.0;
  if (s == 2) {
    num = u2_power_fft(embed(f, m), fft);
    den = u2_power_fft(embed(ones, m), fft);
  } else {
    num = u3_power_fft(embed(f, m), fft);
    den = u3_power_fft(embed(ones, m), fft);
  }
  return std::pow(std::max(num, 0.0) / den, 1.0 / std::ldexp(1.0, s));
}

namespace {

// ||g||_level^{2^level} along the samples g[1..], with inner averages over n = 1..n_samples.
double ghk_power(const std::vector<cplx>& g, int level, const GhkParams& p) {
  const std::size_t n = p.n_samples;
  if (level == 1) {
    return std::norm(pairwise_sum(std::span<const cplx>(g.data() + 1, n)) / static_cast<double>(n));
  }
  std::vector<double> per_l(p.h_max);
  if (level == 2) {
    parallel_for(p.h_max, [&](std::size_t i) {
      const std::size_t l = i + 1;
      // (1/N) sum_n conj(g(n)) g(n + l)
      const cplx c = simd::dot_conj(g.data() + 1 + l, g.data() + 1, n) / static_cast<double>(n);
      per_l[i] = std::norm(c);
    });
  } else {
    const std::size_t len = g.size() - p.h_max;
    for (std::size_t i = 0; i < p.h_max; ++i) {
      const std::size_t l = i + 1;
      std::vector<cplx> derived(len);
      // derived[m] = conj(g(m)) g(m + l) = g(m + l) conj(g(m))
      simd::mul_conj(derived.data() + 1, g.data() + 1 + l, g.data() + 1, len - 1);
      per_l[i] = ghk_power(derived, level - 1, p);
    }
  }
  return pairwise_sum(std::span<const double>(per_l)) / static_cast<double>(p.h_max);
}

}  // namespace

double ghk_estimate(const systems::SystemSpec& sys, const systems::Observable& f, const systems::Point& x,
                    const GhkParams& params) {
  if (params.k < 1 || params.h_max == 0 || params.n_samples == 0) {
    throw std::invalid_argument("ghk_estimate: parameters must be positive");
  }
  if (params.k > 3) throw resource_limit_error("ghk_estimate: k must be at most 3");
  const double h = static_cast<double>(params.h_max), n = static_cast<double>(params.n_samples);
  if (h * n > 1.0e8 || std::pow(h, params.k - 1) * n > 1.0e9) {
    throw resource_limit_error("ghk_estimate: h_max and n_samples exceed the evaluation limit");
  }
  const std::size_t len = params.n_samples + static_cast<std::size_t>(params.k - 1) * params.h_max;
  const FiniteSeq orbit = systems::orbit_samples(sys, f, x, len);
  std::vector<cplx> g(orbit.raw().begin(), orbit.raw().end());
  const double power = ghk_power(g, params.k, params);
  return std::pow(std::max(power, 0.0), 1.0 / std::ldexp(1.0, params.k));
}

}  // namespace erglab::gowers
