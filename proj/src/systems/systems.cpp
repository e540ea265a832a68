#include "erglab/systems/systems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "erglab/detail/double_double.hpp"
#include "erglab/errors.hpp"
#include "erglab/summation.hpp"

namespace erglab::systems {

using detail::DoubleDouble;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t expansion_word(std::uint64_t seed, std::uint64_t j) {
  return splitmix64(splitmix64(seed) ^ (j * 0xD1B54A32D192ED03ull));
}

const TorusPoint& torus(const Point& x, std::size_t dim, const char* who) {
  const auto* p = std::get_if<TorusPoint>(&x);
  if (p == nullptr || p->coords.size() != dim) {
    throw std::invalid_argument(std::string(who) + ": expected a torus point of dimension " + std::to_string(dim));
  }
  return *p;
}

const HeisenbergElement& heisenberg(const Point& x, const char* who) {
  const auto* p = std::get_if<HeisenbergElement>(&x);
  if (p == nullptr) throw std::invalid_argument(std::string(who) + ": expected a Heisenberg point");
  return *p;
}

// Doubling map on a finite binary expansion: exact shifts in chunks that
// cannot overflow.
double double_n_times(double x, std::uint64_t n) {
  if (n > 1100) return 0.0;
  while (n > 0) {
    const int step = static_cast<int>(std::min<std::uint64_t>(n, 50));
    x = frac(std::ldexp(x, step));
    n -= static_cast<std::uint64_t>(step);
  }
  return x;
}

DoubleDouble dd(double v) { return {v, 0.0}; }

double phase_of(const std::vector<std::int64_t>& freq, const double* coords) {
  DoubleDouble s{};
  for (std::size_t i = 0; i < freq.size(); ++i) {
    s = detail::dd_add(s, detail::two_prod(static_cast<double>(freq[i]), coords[i]));
  }
  return detail::dd_frac(s);
}

double sin_sq_pi(double t) {
  const double s = std::sin(std::numbers::pi * t);
  return s * s;
}

double tent(double t) { return 1.0 - std::abs(2.0 * t - 1.0); }

cplx eval_nil_function(NilFunction fn, const HeisenbergElement& p) {
  const cplx ez = unit_phase(p.z);
  switch (fn) {
    case NilFunction::kZPhase:
      return ez;
    case NilFunction::kTwisted:
      return sin_sq_pi(p.x) * sin_sq_pi(p.y) * ez;
    case NilFunction::kTent:
      return tent(p.x) * tent(p.y) * ez;
  }
  return ez;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

std::string system_name(const SystemSpec& sys) {
  return std::visit(Overloaded{
                        [](const Rotation& r) { return "rotation:" + fmt_double(r.alpha); },
                        [](const Skew& s) { return "skew:" + fmt_double(s.alpha) + "," + fmt_double(s.beta); },
                        [](const Doubling&) { return std::string("doubling"); },
                        [](const NilTranslation& n) {
                          return "nil:" + fmt_double(n.g.x) + "," + fmt_double(n.g.y) + "," + fmt_double(n.g.z);
                        },
                        [](const Identity&) { return std::string("identity"); },
                    },
                    sys);
}

std::string observable_name(const Observable& f) {
  return std::visit(Overloaded{
                        [](const Character& c) {
                          std::string s = "character:";
                          for (std::size_t i = 0; i < c.freq.size(); ++i) {
                            if (i) s += ",";
                            s += std::to_string(c.freq[i]);
                          }
                          return s;
                        },
                        [](const NilLipschitz& n) {
                          switch (n.fn) {
                            case NilFunction::kZPhase: return std::string("nil:zphase");
                            case NilFunction::kTwisted: return std::string("nil:twisted");
                            case NilFunction::kTent: return std::string("nil:tent");
                          }
                          return std::string("nil");
                        },
                        [](const Constant& c) {
                          return "const:" + fmt_double(c.value.real()) +
                                 (c.value.imag() != 0.0 ? "," + fmt_double(c.value.imag()) : std::string());
                        },
                    },
                    f);
}

double expansion_window(std::uint64_t seed, std::uint64_t offset) {
  const std::uint64_t j = offset / 64;
  const unsigned s = static_cast<unsigned>(offset % 64);
  const std::uint64_t w0 = expansion_word(seed, j);
  const std::uint64_t v = s == 0 ? w0 : (w0 << s) | (expansion_word(seed, j + 1) >> (64 - s));
  return std::ldexp(static_cast<double>(v >> 11), -53);
}

Point origin_point(const SystemSpec& sys) {
  return std::visit(Overloaded{
                        [](const Skew&) -> Point { return TorusPoint{{0.0, 0.0}, std::nullopt}; },
                        [](const NilTranslation&) -> Point { return HeisenbergElement{}; },
                        [](const auto&) -> Point { return TorusPoint{{0.0}, std::nullopt}; },
                    },
                    sys);
}

Point random_point(const SystemSpec& sys, std::uint64_t seed) {
  auto coord = [seed](std::uint64_t i) { return expansion_window(splitmix64(seed + i), 0); };
  return std::visit(Overloaded{
                        [&](const Skew&) -> Point { return TorusPoint{{coord(0), coord(1)}, std::nullopt}; },
                        [&](const NilTranslation&) -> Point { return HeisenbergElement{coord(0), coord(1), coord(2)}; },
                        [&](const Doubling&) -> Point { return TorusPoint{{expansion_window(seed, 0)}, seed}; },
                        [&](const auto&) -> Point { return TorusPoint{{coord(0)}, std::nullopt}; },
                    },
                    sys);
}

Point iterate(const SystemSpec& sys, const Point& x, std::uint64_t n) {
  const double nd = static_cast<double>(n);
  return std::visit(
      Overloaded{
          [&](const Rotation& r) -> Point {
            const auto& p = torus(x, 1, "iterate(rotation)");
            const double v = detail::dd_frac(detail::dd_add(dd(p.coords[0]), detail::two_prod(nd, r.alpha)));
            return TorusPoint{{v}, p.bit_seed};
          },
          [&](const Skew& s) -> Point {
            const auto& p = torus(x, 2, "iterate(skew)");
            const double x0 = p.coords[0], y0 = p.coords[1];
            const double binom = nd * (nd - 1.0) / 2.0;
            const double xv = detail::dd_frac(detail::dd_add(dd(x0), detail::two_prod(nd, s.alpha)));
            DoubleDouble y = dd(y0);
            y = detail::dd_add(y, detail::two_prod(nd, x0));
            y = detail::dd_add(y, detail::two_prod(binom, s.alpha));
            y = detail::dd_add(y, detail::two_prod(nd, s.beta));
            return TorusPoint{{xv, detail::dd_frac(y)}, p.bit_seed};
          },
          [&](const Doubling&) -> Point {
            const auto& p = torus(x, 1, "iterate(doubling)");
            if (p.bit_seed) return TorusPoint{{expansion_window(*p.bit_seed, n)}, p.bit_seed};
            return TorusPoint{{double_n_times(p.coords[0], n)}, std::nullopt};
          },
          [&](const NilTranslation& t) -> Point {
            return translate_reduced(t.g, nd, heisenberg(x, "iterate(nil)"));
          },
          [&](const Identity&) -> Point { return x; },
      },
      sys);
}

cplx evaluate(const Observable& f, const Point& x) {
  return std::visit(
      Overloaded{
          [&](const Character& c) -> cplx {
            if (const auto* t = std::get_if<TorusPoint>(&x)) {
              if (c.freq.size() != t->coords.size()) {
                throw std::invalid_argument("character: frequency dimension does not match the point");
              }
              return unit_phase(phase_of(c.freq, t->coords.data()));
            }
            const auto& h = std::get<HeisenbergElement>(x);
            if (c.freq.size() != 3) throw std::invalid_argument("character: Heisenberg points need 3 frequencies");
            const double coords[3] = {h.x, h.y, h.z};
            return unit_phase(phase_of(c.freq, coords));
          },
          [&](const NilLipschitz& n) -> cplx {
            return eval_nil_function(n.fn, heisenberg(x, "nil observable"));
          },
          [&](const Constant& c) -> cplx { return c.value; },
      },
      f);
}

FiniteSeq orbit_samples(const SystemSpec& sys, const Observable& f, const Point& x, std::size_t n_max) {
  if (n_max == 0) throw std::invalid_argument("orbit_samples: n_max must be positive");
  FiniteSeq out(n_max);
  // Validates the point against both the system and the observable.
  (void)iterate(sys, x, 0);
  (void)evaluate(f, x);
  std::visit(
      Overloaded{
          [&](const Rotation& r) {
            const auto& p = std::get<TorusPoint>(x);
            DoubleDouble state = dd(p.coords[0]);
            TorusPoint cur{{0.0}, p.bit_seed};
            for (std::size_t n = 1; n <= n_max; ++n) {
              state = detail::dd_frac_dd(detail::dd_add(state, dd(r.alpha)));
              cur.coords[0] = state.hi + state.lo;
              out[n] = evaluate(f, cur);
            }
          },
          [&](const Skew& s) {
            const auto& p = std::get<TorusPoint>(x);
            DoubleDouble xs = dd(p.coords[0]), ys = dd(p.coords[1]);
            TorusPoint cur{{0.0, 0.0}, p.bit_seed};
            for (std::size_t n = 1; n <= n_max; ++n) {
              ys = detail::dd_frac_dd(detail::dd_add(detail::dd_add(ys, xs), dd(s.beta)));
              xs = detail::dd_frac_dd(detail::dd_add(xs, dd(s.alpha)));
              cur.coords[0] = xs.hi + xs.lo;
              cur.coords[1] = ys.hi + ys.lo;
              out[n] = evaluate(f, cur);
            }
          },
          [&](const Doubling&) {
            const auto& p = std::get<TorusPoint>(x);
            TorusPoint cur{{p.coords[0]}, p.bit_seed};
            for (std::size_t n = 1; n <= n_max; ++n) {
              cur.coords[0] = p.bit_seed ? expansion_window(*p.bit_seed, n) : frac(2.0 * cur.coords[0]);
              out[n] = evaluate(f, cur);
            }
          },
          [&](const NilTranslation& t) {
            HeisenbergElement cur = std::get<HeisenbergElement>(x);
            for (std::size_t n = 1; n <= n_max; ++n) {
              cur = translate_reduced(t.g, 1.0, cur);
              out[n] = evaluate(f, Point{cur});
            }
          },
          [&](const Identity&) {
            const cplx v = evaluate(f, x);
            for (std::size_t n = 1; n <= n_max; ++n) out[n] = v;
          },
      },
      sys);
  return out;
}

cplx eval_nilsequence(const PolySeq& ps, const Observable& f, std::int64_t n) {
  return evaluate(f, Point{poly_orbit_reduced(ps, n)});
}

double lipschitz_norm_estimate(const Observable& f, std::size_t grid_res) {
  if (grid_res < 2) throw std::invalid_argument("lipschitz_norm_estimate: grid_res must be at least 2");
  if (const auto* c = std::get_if<Constant>(&f)) return std::abs(c->value);

  std::size_t dim = 3;
  bool heis = true;
  if (const auto* ch = std::get_if<Character>(&f)) {
    dim = ch->freq.size();
    heis = false;
    if (dim == 0) throw std::invalid_argument("lipschitz_norm_estimate: empty character");
  }
  const std::size_t side = [&] {
    std::size_t s = 2;
    while (s < grid_res) s <<= 1;
    return s;
  }();
  double cells = std::pow(static_cast<double>(side), static_cast<double>(dim));
  if (cells * static_cast<double>(side) * static_cast<double>(dim) > 4.0e9) {
    throw resource_limit_error("lipschitz_norm_estimate: grid too fine");
  }
  const std::size_t total = static_cast<std::size_t>(cells);
  const double h = 1.0 / static_cast<double>(side);

  std::vector<cplx> values(total);
  std::vector<double> coords(dim);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t d = 0; d < dim; ++d) {
      coords[d] = static_cast<double>(rem % side) * h;
      rem /= side;
    }
    Point p = heis ? Point{HeisenbergElement{coords[0], coords[1], coords[2]}} : Point{TorusPoint{coords, std::nullopt}};
    values[idx] = evaluate(f, p);
  }

  double sup = 0.0;
  for (const cplx& v : values) sup = std::max(sup, std::abs(v));

  // Axis-aligned pairs at every separation up to half the circle.
  double quotient = 0.0;
  std::size_t stride = 1;
  for (std::size_t d = 0; d < dim; ++d, stride *= side) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      const std::size_t pos = (idx / stride) % side;
      const std::size_t base = idx - pos * stride;
      for (std::size_t sep = 1; sep <= side / 2; ++sep) {
        const std::size_t other = base + ((pos + sep) % side) * stride;
        const double dist = static_cast<double>(sep) * h;
        quotient = std::max(quotient, std::abs(values[idx] - values[other]) / dist);
      }
    }
  }
  return sup + quotient;
}

cplx mobius_nil_correlation(const PolySeq& ps, const Observable& f, const arith::SieveTable& table,
                            std::size_t n) {
  if (n == 0 || n > table.n_max()) throw std::invalid_argument("mobius_nil_correlation: n outside sieve range");
  std::vector<cplx> terms(n, cplx(0.0, 0.0));
  for (std::size_t m = 1; m <= n; ++m) {
    const int mu = table.mu(m);
    if (mu != 0) terms[m - 1] = static_cast<double>(mu) * eval_nilsequence(ps, f, static_cast<std::int64_t>(m));
  }
  return pairwise_sum(std::span<const cplx>(terms)) / static_cast<double>(n);
}

PolySeq default_quadratic_sequence() {
  return PolySeq::linear(HeisenbergElement{std::numbers::sqrt2, std::numbers::sqrt3, 0.0});
}

}  // namespace erglab::systems
