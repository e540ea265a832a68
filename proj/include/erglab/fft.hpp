#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "erglab/finite_seq.hpp"

namespace erglab {

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
std::size_t next_power_of_two(std::size_t n);

/// Iterative radix-2 transform of a fixed power-of-two length.
///   forward:  X[k] = sum_j x[j] e(-jk/n)
///   inverse:  x[j] = (1/n) sum_k X[k] e(jk/n)
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::span<cplx> data) const;
  void inverse(std::span<cplx> data) const;

 private:
  void transform(std::span<cplx> data, bool inverse) const;

  std::size_t n_;
  std::vector<cplx> twiddles_;  // e(-j/n) for j < n/2
  std::vector<std::size_t> bitrev_;
};

/// Linear convolution c[t] = sum_{i+j=t} a[i] b[j], length a.size()+b.size()-1.
std::vector<cplx> convolve(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace erglab
