#include "erglab/finite_seq.hpp"

#include <algorithm>
#include <stdexcept>

namespace erglab {

FiniteSeq::FiniteSeq(std::size_t n) : values_(n + 1, cplx(0.0, 0.0)) {
  if (n == 0) throw std::invalid_argument("FiniteSeq: length must be at least 1");
}

FiniteSeq FiniteSeq::from_values(std::span<const cplx> values) {
  FiniteSeq s(values.size());
  std::copy(values.begin(), values.end(), s.values_.begin() + 1);
  if (!s.all_finite()) throw std::invalid_argument("FiniteSeq: non-finite entry");
  return s;
}

FiniteSeq FiniteSeq::from_real(std::span<const double> values) {
  FiniteSeq s(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) s.values_[i + 1] = cplx(values[i], 0.0);
  if (!s.all_finite()) throw std::invalid_argument("FiniteSeq: non-finite entry");
  return s;
}

double FiniteSeq::sup_norm() const {
  double m = 0.0;
  for (std::size_t i = 1; i < values_.size(); ++i) m = std::max(m, std::abs(values_[i]));
  return m;
}

bool FiniteSeq::is_real() const {
  return std::all_of(values_.begin() + 1, values_.end(), [](cplx v) { return v.imag() == 0.0; });
}

bool FiniteSeq::all_finite() const {
  return std::all_of(values_.begin() + 1, values_.end(), [](cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

}  // namespace erglab
