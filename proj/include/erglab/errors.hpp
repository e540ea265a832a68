#pragma once

#include <stdexcept>
#include <string>

namespace erglab {

// Invalid arguments and index overflows use std::invalid_argument and
// std::out_of_range. The two types below cover the remaining failure classes.

/// A request whose cost exceeds the configured evaluation envelope.
class resource_limit_error : public std::runtime_error {
 public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Input that makes a normalized quantity undefined (e.g. a zero denominator).
class degenerate_input_error : public std::domain_error {
 public:
  explicit degenerate_input_error(const std::string& what) : std::domain_error(what) {}
};

/// Malformed or unreadable binary/text input.
class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace erglab
