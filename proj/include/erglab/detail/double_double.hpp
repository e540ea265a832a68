#pragma once

#include <cmath>

namespace erglab::detail {

// Unevaluated sum hi + lo, used where large phases must be reduced mod 1
// without losing the fractional digits.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble dd_add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return two_sum(s.hi, s.lo);
}

inline DoubleDouble dd_mul(DoubleDouble a, double b) {
  DoubleDouble p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return two_sum(p.hi, p.lo);
}

inline DoubleDouble dd_mul(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return two_sum(p.hi, p.lo);
}

inline DoubleDouble dd_neg(DoubleDouble a) { return {-a.hi, -a.lo}; }

inline double dd_floor(DoubleDouble a) {
  const double f = std::floor(a.hi);
  if (f != a.hi) return f;
  // hi is integral: the sign of lo decides.
  return a.lo < 0.0 ? f - 1.0 : f;
}

/// a - floor(a), kept as a double-double in [0, 1).
inline DoubleDouble dd_frac_dd(DoubleDouble a) {
  const double f = dd_floor(a);
  DoubleDouble r = two_sum(a.hi - f, a.lo);
  if (r.hi >= 1.0) r = two_sum(r.hi - 1.0, r.lo);
  if (r.hi < 0.0) r = two_sum(r.hi + 1.0, r.lo);
  return r;
}

/// Fractional part in [0, 1), rounded to double.
inline double dd_frac(DoubleDouble a) {
  const double f = dd_floor(a);
  DoubleDouble r = two_sum(a.hi - f, a.lo);  // a.hi - f is exact
  double v = r.hi + r.lo;
  if (v >= 1.0) v -= 1.0;
  if (v < 0.0) v += 1.0;
  return v >= 1.0 ? 0.0 : v;
}

}  // namespace erglab::detail
