#include "erglab/arith/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "erglab/errors.hpp"
#include "erglab/summation.hpp"

namespace erglab::arith {

Chebyshev chebyshev(const SieveTable& table, double x) {
  if (!(x >= 2.0) || x > static_cast<double>(table.n_max())) {
    throw std::invalid_argument("chebyshev: x must lie in [2, n_max]");
  }
  const auto n = static_cast<std::uint64_t>(std::floor(x));
  return {table.psi_at(n), table.upsilon_at(n)};
}

namespace {

double simpson_inv_log(double a, double b, double max_step) {
  auto intervals = static_cast<std::uint64_t>(std::ceil((b - a) / max_step));
  if (intervals % 2 == 1) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  CompensatedSum odd, even;
  for (std::uint64_t i = 1; i < intervals; ++i) {
    const double v = 1.0 / std::log(a + h * static_cast<double>(i));
    (i % 2 == 1 ? odd : even).add(v);
  }
  const double ends = 1.0 / std::log(a) + 1.0 / std::log(b);
  return h / 3.0 * (ends + 4.0 * odd.value() + 2.0 * even.value());
}

}  // namespace

double logarithmic_integral(double x) {
  if (x < 2.0) throw std::invalid_argument("logarithmic_integral: x must be at least 2");
  // Dyadic panels [a, 2a]; the step shrinks near 2 where 1/log t bends hardest.
  CompensatedSum total;
  for (double a = 2.0; a < x; a *= 2.0) {
    const double b = std::min(2.0 * a, x);
    total.add(simpson_inv_log(a, b, std::min(0.5, a / 256.0)));
  }
  return total.value();
}

PrimeCount prime_pi_li(const SieveTable& table, std::uint64_t n) {
  if (n < 2 || n > table.n_max()) throw std::invalid_argument("prime_pi_li: n must lie in [2, n_max]");
  return {table.pi_at(n), logarithmic_integral(static_cast<double>(n))};
}

double chebyshev_gap_bound(double x) {
  const double l = std::log(x);
  return l * l / (2.0 * std::sqrt(x) * std::log(2.0));
}

double aperiodicity_profile(const FiniteSeq& seq, std::uint64_t a_max) {
  if (a_max == 0) throw std::invalid_argument("aperiodicity_profile: a_max must be positive");
  const std::size_t n = seq.size();
  if (n < a_max) throw std::invalid_argument("aperiodicity_profile: sequence shorter than a_max");
  double worst = 0.0;
  std::vector<cplx> sums;
  std::vector<std::uint64_t> counts;
  for (std::uint64_t a = 1; a <= a_max; ++a) {
    sums.assign(a, cplx(0.0, 0.0));
    counts.assign(a, 0);
    std::uint64_t b = 1 % a;
    for (std::size_t i = 1; i <= n; ++i) {
      sums[b] += seq[i];
      ++counts[b];
      if (++b == a) b = 0;
    }
    for (std::uint64_t r = 0; r < a; ++r) {
      worst = std::max(worst, std::abs(sums[r]) / static_cast<double>(counts[r]));
    }
  }
  return worst;
}

double stat_orth_ratio(const FiniteSeq& a, const FiniteSeq& b) {
  if (a.size() != b.size()) throw std::invalid_argument("stat_orth_ratio: length mismatch");
  const std::size_t n = a.size();
  std::vector<cplx> cross(n);
  std::vector<double> ea(n), eb(n);
  for (std::size_t i = 1; i <= n; ++i) {
    cross[i - 1] = a[i] * std::conj(b[i]);
    ea[i - 1] = std::norm(a[i]);
    eb[i - 1] = std::norm(b[i]);
  }
  const double na = pairwise_sum(std::span<const double>(ea));
  const double nb = pairwise_sum(std::span<const double>(eb));
  if (na == 0.0 || nb == 0.0) throw degenerate_input_error("stat_orth_ratio: zero sequence");
  const double r = std::abs(pairwise_sum(std::span<const cplx>(cross))) / std::sqrt(na * nb);
  return std::min(r, 1.0);
}

namespace {

void check_bounded_sequence(const FiniteSeq& a, const SieveTable& table, const char* who) {
  const std::size_t n = a.size();
  if (n < 3) throw std::invalid_argument(std::string(who) + ": sequence length must be at least 3");
  if (n > table.n_max()) throw std::invalid_argument(std::string(who) + ": sequence exceeds sieve range");
  if (a.sup_norm() > 1.0 + 1e-12) throw std::invalid_argument(std::string(who) + ": sequence not bounded by 1");
}

cplx prime_average(const FiniteSeq& a, const SieveTable& table) {
  const std::size_t n = a.size();
  std::vector<cplx> terms;
  terms.reserve(table.pi_at(n));
  for (const std::uint32_t p : table.primes()) {
    if (p > n) break;
    terms.push_back(a[p]);
  }
  return pairwise_sum(std::span<const cplx>(terms)) / static_cast<double>(table.pi_at(n));
}

cplx weighted_average(const FiniteSeq& a, std::span<const double> weights) {
  const std::size_t n = a.size();
  std::vector<cplx> terms(n);
  for (std::size_t i = 1; i <= n; ++i) terms[i - 1] = weights[i] * a[i];
  return pairwise_sum(std::span<const cplx>(terms)) / static_cast<double>(n);
}

}  // namespace

double nh_bound(double n, double c_abs) {
  const double l = std::log(n);
  return 8.0 * c_abs / l + 6.0 * c_abs * c_abs / (l * l) + l * l / (2.0 * std::sqrt(n) * std::log(2.0));
}

NhGap nh_gap(const FiniteSeq& a, const SieveTable& table, const NhConfig& cfg) {
  if (!(cfg.c_abs > 0.0)) throw std::invalid_argument("nh_gap: c_abs must be positive");
  check_bounded_sequence(a, table, "nh_gap");
  const cplx primes = prime_average(a, table);
  const cplx weighted = weighted_average(a, table.mangoldt_values());
  return {std::abs(primes - weighted), nh_bound(static_cast<double>(a.size()), cfg.c_abs)};
}

NhPrimeGap nh_prime_gap(const FiniteSeq& a, const SieveTable& table) {
  check_bounded_sequence(a, table, "nh_prime_gap");
  const std::size_t n = a.size();
  const double nd = static_cast<double>(n);
  const double pi = static_cast<double>(table.pi_at(n));
  const double l = std::log(nd);
  const cplx primes = prime_average(a, table);
  const cplx weighted = weighted_average(a, table.mangoldt_prime_values());
  const double bound = (pi / nd) * std::abs(nd / pi - l) + (l * pi - table.upsilon_at(n)) / nd;
  return {std::abs(primes - weighted), bound};
}

double nh_constant_for(double gap, double n) {
  if (gap <= 0.0) return 0.0;
  const double l = std::log(n);
  // 6u^2 + 8u = gap with u = C / log N.
  const double u = (-8.0 + std::sqrt(64.0 + 24.0 * gap)) / 12.0;
  return u * l;
}

}  // namespace erglab::arith
