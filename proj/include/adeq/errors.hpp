#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace adeq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed expression or differential-polynomial text.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

/// Violated operation precondition (zero constant term, bad radius, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Exact/numeric series combined in one operation.
struct ModeMismatch : Error {
  ModeMismatch() : Error("power series mode mismatch") {}
};

/// A series expansion could not be produced (adjunction disabled,
/// numeric overflow, unresolved name).
struct ExpansionError : Error {
  using Error::Error;
};

}  // namespace adeq
