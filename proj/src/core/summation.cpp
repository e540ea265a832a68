#include "erglab/summation.hpp"

#include <cmath>

namespace erglab {
namespace {

constexpr std::size_t kBase = 32;

template <class T>
T pairwise(const T* xs, std::size_t n) {
  if (n <= kBase) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise(xs, half) + pairwise(xs + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise(xs.data(), xs.size()); }
cplx pairwise_sum(std::span<const cplx> xs) { return pairwise(xs.data(), xs.size()); }

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace erglab
