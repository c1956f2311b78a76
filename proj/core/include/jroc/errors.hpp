#pragma once

#include <stdexcept>
#include <string>

namespace jroc {

/// Malformed input data (CSV rows, context files, point files).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A contract violation detected at runtime that indicates a bug rather
/// than bad input (e.g. the exhaustive search being beaten on validation).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace jroc
