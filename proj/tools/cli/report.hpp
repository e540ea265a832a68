#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "erglab/finite_seq.hpp"

namespace erglab::cli {

/// Columns N,re,im,abs followed by extra_columns.
struct CsvReport {
  struct Row {
    std::uint64_t n = 0;
    cplx value;
    std::vector<double> extra;
  };

  std::vector<std::string> extra_columns;
  std::vector<Row> rows;

  /// Throws std::logic_error on a column-count mismatch or non-increasing N.
  void add(std::uint64_t n, cplx value, std::vector<double> extra = {});

  std::string csv() const;
  /// Log-log line chart of |value| against N.
  std::string svg(const std::string& title) const;
};

std::string format_double(double v);

}  // namespace erglab::cli
