#pragma once

#include <cstddef>
#include <span>

#include "erglab/finite_seq.hpp"

namespace erglab {

/// Pairwise (tree) summation with a sequential base case of 32 terms. The
/// association order depends only on the length, so results are reproducible.
double pairwise_sum(std::span<const double> xs);
cplx pairwise_sum(std::span<const cplx> xs);

/// Running sum with Neumaier compensation, for prefix tables.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace erglab
