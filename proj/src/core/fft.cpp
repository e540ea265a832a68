#include "erglab/fft.hpp"

#include <numbers>
#include <stdexcept>
#include <utility>

namespace erglab {

std::size_t next_power_of_two(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

Fft::Fft(std::size_t n) : n_(n) {
  if (!is_power_of_two(n)) throw std::invalid_argument("Fft: length must be a power of two");
  twiddles_.resize(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    // Each twiddle from its own angle rather than by recurrence.
    const double a = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    twiddles_[j] = cplx(std::cos(a), std::sin(a));
  }
  bitrev_.resize(n);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = r;
  }
}

void Fft::forward(std::span<cplx> data) const { transform(data, false); }

void Fft::inverse(std::span<cplx> data) const {
  transform(data, true);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : data) v *= scale;
}

void Fft::transform(std::span<cplx> data, bool inverse) const {
  if (data.size() != n_) throw std::invalid_argument("Fft: data length mismatch");
  for (std::size_t i = 0; i < n_; ++i) {
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n_ / len;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cplx w = twiddles_[j * stride];
        if (inverse) w = std::conj(w);
        const cplx u = data[start + j];
        const cplx v = data[start + j + half] * w;
        data[start + j] = u + v;
        data[start + j + half] = u - v;
      }
    }
  }
}

std::vector<cplx> convolve(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out = a.size() + b.size() - 1;
  const std::size_t m = next_power_of_two(out);
  Fft fft(m);
  std::vector<cplx> fa(m), fb(m);
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  fft.forward(fa);
  fft.forward(fb);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
  fft.inverse(fa);
  fa.resize(out);
  return fa;
}

}  // namespace erglab
