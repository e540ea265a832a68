#include "erglab/systems/heisenberg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "erglab/detail/double_double.hpp"

namespace erglab::systems {

using detail::DoubleDouble;

HeisenbergElement heis_mul(const HeisenbergElement& g, const HeisenbergElement& h) {
  return {g.x + h.x, g.y + h.y, g.z + h.z + g.x * h.y};
}

HeisenbergElement heis_inv(const HeisenbergElement& g) { return {-g.x, -g.y, g.x * g.y - g.z}; }

HeisenbergElement heis_pow(const HeisenbergElement& g, double t) {
  const double binom = t * (t - 1.0) / 2.0;
  return {t * g.x, t * g.y, t * g.z + binom * (g.x * g.y)};
}

namespace {

std::int64_t to_int(double v) {
  if (!(std::abs(v) < 9.0e18)) throw std::overflow_error("heisenberg: lattice coordinate out of range");
  return static_cast<std::int64_t>(v);
}

double unit_interval(double v) { return (v >= 1.0 || v < 0.0) ? 0.0 : v; }

struct DdElement {
  DoubleDouble x, y, z;
};

DdElement dd_of(const HeisenbergElement& g) { return {{g.x, 0.0}, {g.y, 0.0}, {g.z, 0.0}}; }

DdElement dd_mul(const DdElement& g, const DdElement& h) {
  return {detail::dd_add(g.x, h.x), detail::dd_add(g.y, h.y),
          detail::dd_add(detail::dd_add(g.z, h.z), detail::dd_mul(g.x, h.y))};
}

DdElement dd_pow(const HeisenbergElement& g, double t) {
  // t (t - 1) / 2 is exact in double-double; the halving is exact.
  DoubleDouble binom = detail::two_prod(t, t - 1.0);
  binom = {binom.hi * 0.5, binom.lo * 0.5};
  const DoubleDouble central = detail::dd_mul(detail::dd_mul(binom, g.x), g.y);
  return {detail::two_prod(t, g.x), detail::two_prod(t, g.y), detail::dd_add(detail::two_prod(t, g.z), central)};
}

HeisenbergElement dd_reduce(const DdElement& g) {
  const double b = -detail::dd_floor(g.y);
  const DoubleDouble w = detail::dd_add(g.z, detail::dd_mul(g.x, b));
  return {unit_interval(detail::dd_frac(g.x)), unit_interval(detail::dd_frac(g.y)),
          unit_interval(detail::dd_frac(w))};
}

}  // namespace

Reduction heis_reduce(const HeisenbergElement& g) {
  const double a = -std::floor(g.x);
  const double b = -std::floor(g.y);
  const DoubleDouble w = detail::dd_add({g.z, 0.0}, detail::two_prod(g.x, b));
  const double c = -detail::dd_floor(w);
  Reduction r;
  r.point = {unit_interval(g.x + a), unit_interval(g.y + b), unit_interval(detail::dd_frac(w))};
  r.gamma = {to_int(a), to_int(b), to_int(c)};
  return r;
}

double IntPoly::operator()(std::int64_t n) const {
  // Horner in 128-bit integers, then a single exact conversion.
  __int128 acc = 0;
  constexpr __int128 kLimit = static_cast<__int128>(1) << 53;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * n + *it;
    if (acc > kLimit || acc < -kLimit) throw std::overflow_error("IntPoly: value exceeds 2^53");
  }
  return static_cast<double>(acc);
}

PolySeq PolySeq::linear(const HeisenbergElement& g) { return {{g}, {IntPoly{{0, 1}}}}; }

HeisenbergElement poly_orbit(const PolySeq& ps, std::int64_t n) {
  if (ps.generators.size() != ps.polys.size()) throw std::invalid_argument("PolySeq: length mismatch");
  HeisenbergElement acc{};
  for (std::size_t i = 0; i < ps.generators.size(); ++i) {
    acc = heis_mul(acc, heis_pow(ps.generators[i], ps.polys[i](n)));
  }
  return acc;
}

HeisenbergElement poly_orbit_reduced(const PolySeq& ps, std::int64_t n) {
  if (ps.generators.size() != ps.polys.size()) throw std::invalid_argument("PolySeq: length mismatch");
  DdElement acc{};
  for (std::size_t i = 0; i < ps.generators.size(); ++i) {
    acc = dd_mul(acc, dd_pow(ps.generators[i], ps.polys[i](n)));
  }
  return dd_reduce(acc);
}

HeisenbergElement translate_reduced(const HeisenbergElement& g, double n, const HeisenbergElement& h) {
  return dd_reduce(dd_mul(dd_pow(g, n), dd_of(h)));
}

}  // namespace erglab::systems
