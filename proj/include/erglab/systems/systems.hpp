#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "erglab/arith/sieve.hpp"
#include "erglab/finite_seq.hpp"
#include "erglab/systems/heisenberg.hpp"

namespace erglab::systems {

/// Golden-ratio rotation number phi - 1 and the secondary default sqrt(2) - 1.
inline constexpr double kGoldenAlpha = 0.61803398874989484820;
inline constexpr double kSqrt2Beta = 0.41421356237309504880;

/// Point of a torus, coordinates in [0, 1).
///
/// When bit_seed is set the point has an infinite binary expansion: the bits are
/// drawn from a counter-based stream keyed by the seed, and coords hold the
/// leading 53 bits. Only the doubling map reads the tail; for every other
/// system the coordinates are the point.
struct TorusPoint {
  std::vector<double> coords;
  std::optional<std::uint64_t> bit_seed;
};

using Point = std::variant<TorusPoint, HeisenbergElement>;

struct Rotation {
  double alpha = kGoldenAlpha;
};
/// T(x, y) = (x + alpha, y + x + beta).
struct Skew {
  double alpha = kGoldenAlpha;
  double beta = 0.0;
};
struct Doubling {};
/// Left translation x Gamma -> g x Gamma on the Heisenberg nilmanifold.
struct NilTranslation {
  HeisenbergElement g;
};
struct Identity {};

using SystemSpec = std::variant<Rotation, Skew, Doubling, NilTranslation, Identity>;

/// x -> e(freq . x). On Heisenberg points freq has three entries (x, y, z).
struct Character {
  std::vector<std::int64_t> freq;
};

enum class NilFunction {
  kZPhase,    // e(z) on the fundamental domain
  kTwisted,   // sin^2(pi x) sin^2(pi y) e(z), continuous on the nilmanifold
  kTent,      // (1 - |2x - 1|)(1 - |2y - 1|) e(z)
};

struct NilLipschitz {
  NilFunction fn = NilFunction::kTwisted;
};

struct Constant {
  cplx value{1.0, 0.0};
};

using Observable = std::variant<Character, NilLipschitz, Constant>;

std::string system_name(const SystemSpec& sys);
std::string observable_name(const Observable& f);

/// The zero point of the system's phase space (identity element for nil systems).
Point origin_point(const SystemSpec& sys);
/// Equidistributed pseudo-random point determined by the seed.
Point random_point(const SystemSpec& sys, std::uint64_t seed);

/// Bits [offset, offset + 53) of a seeded expansion, as a number in [0, 1).
double expansion_window(std::uint64_t seed, std::uint64_t offset);

/// T^n x. Throws std::invalid_argument on a point of the wrong kind or dimension.
Point iterate(const SystemSpec& sys, const Point& x, std::uint64_t n);

/// f(x). Throws std::invalid_argument when f does not apply to the point.
cplx evaluate(const Observable& f, const Point& x);

/// (f(T^n x)) for n = 1..n_max, by incremental stepping.
FiniteSeq orbit_samples(const SystemSpec& sys, const Observable& f, const Point& x, std::size_t n_max);

/// F(g(n) Gamma).
cplx eval_nilsequence(const PolySeq& ps, const Observable& f, std::int64_t n);

/// Lower estimate of sup|F| + sup |F(p) - F(q)| / d(p, q) on a dyadic grid of at
/// least grid_res points per axis (axis-aligned pairs only). d is the max of the
/// coordinate circle distances. Nondecreasing in grid_res.
double lipschitz_norm_estimate(const Observable& f, std::size_t grid_res);

/// (1/n) sum_{m<=n} mu(m) F(g(m) Gamma).
cplx mobius_nil_correlation(const PolySeq& ps, const Observable& f, const arith::SieveTable& table,
                            std::size_t n);

/// Linear generator (sqrt 2, sqrt 3, 0): the default quadratic-phase nilsequence.
PolySeq default_quadratic_sequence();

}  // namespace erglab::systems
