#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace erglab {

using cplx = std::complex<double>;

/// Fractional part in [0, 1). Exact for every finite double.
inline double frac(double t) {
  double r = t - std::floor(t);
  return r >= 1.0 ? 0.0 : r;
}

/// e(t) = exp(2 pi i t), with the argument reduced mod 1 before the trig call.
inline cplx unit_phase(double t) {
  const double r = t - std::nearbyint(t);
  const double a = 2.0 * std::numbers::pi * r;
  return {std::cos(a), std::sin(a)};
}

/// Complex sequence indexed 1..N. Slot 0 exists in storage and always holds 0,
/// so that data()[n] is the n-th term.
class FiniteSeq {
 public:
  explicit FiniteSeq(std::size_t n);

  /// Terms for n = 1..values.size().
  static FiniteSeq from_values(std::span<const cplx> values);
  static FiniteSeq from_real(std::span<const double> values);

  template <class F>
  static FiniteSeq generate(std::size_t n, F&& f) {
    FiniteSeq s(n);
    for (std::size_t i = 1; i <= n; ++i) s.values_[i] = cplx(f(i));
    return s;
  }

  std::size_t size() const { return values_.size() - 1; }

  cplx operator[](std::size_t n) const { return values_[n]; }
  cplx& operator[](std::size_t n) { return values_[n]; }

  /// Storage including the unused slot 0.
  std::span<const cplx> raw() const { return values_; }
  std::span<cplx> raw() { return values_; }
  const cplx* data() const { return values_.data(); }

  /// Terms 1..N.
  std::span<const cplx> terms() const { return std::span<const cplx>(values_).subspan(1); }

  double sup_norm() const;
  bool is_real() const;
  bool all_finite() const;

 private:
  std::vector<cplx> values_;
};

}  // namespace erglab
