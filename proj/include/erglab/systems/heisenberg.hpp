#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace erglab::systems {

/// Element of the 2-step Heisenberg group in Mal'cev coordinates of the second
/// kind, with product
///   (x, y, z) (x', y', z') = (x + x', y + y', z + z' + x y').
/// The lattice Gamma consists of the elements with integer coordinates.
struct HeisenbergElement {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

HeisenbergElement heis_mul(const HeisenbergElement& g, const HeisenbergElement& h);
HeisenbergElement heis_inv(const HeisenbergElement& g);

/// One-parameter subgroup power g^t = (t x, t y, t z + t (t - 1)/2 x y).
HeisenbergElement heis_pow(const HeisenbergElement& g, double t);

struct Reduction {
  HeisenbergElement point;          // g * gamma, every coordinate in [0, 1)
  std::array<std::int64_t, 3> gamma;  // lattice element (a, b, c)
};

/// Fundamental-domain representative of g Gamma, with
/// a = -floor(x), b = -floor(y), c = -floor(z + x b).
Reduction heis_reduce(const HeisenbergElement& g);

/// Integer polynomial, coefficients in ascending degree.
struct IntPoly {
  std::vector<std::int64_t> coeffs;

  /// Exact evaluation; throws std::overflow_error past 2^53.
  double operator()(std::int64_t n) const;
};

/// g(n) = gamma_1^{p_1(n)} ... gamma_m^{p_m(n)}.
struct PolySeq {
  std::vector<HeisenbergElement> generators;
  std::vector<IntPoly> polys;

  /// Linear orbit n -> g^n of a single element.
  static PolySeq linear(const HeisenbergElement& g);
};

/// Unreduced g(n), evaluated left to right in double precision.
HeisenbergElement poly_orbit(const PolySeq& ps, std::int64_t n);

/// Fundamental-domain point of g(n) Gamma. Mathematically heis_reduce(poly_orbit(ps, n)).point,
/// but the large central coordinate is carried in double-double arithmetic so
/// that the fractional digits survive for large n.
HeisenbergElement poly_orbit_reduced(const PolySeq& ps, std::int64_t n);

/// Fundamental-domain point of g^n h Gamma for real n, with the same precision care.
HeisenbergElement translate_reduced(const HeisenbergElement& g, double n, const HeisenbergElement& h);

}  // namespace erglab::systems
