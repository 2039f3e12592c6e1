#pragma once

#include <string>
#include <string_view>

namespace adeq {

enum class SymbolKind {
  Constant,  // adjoined transcendental constant (pi, exp(1), ...)
  Variable,  // the independent variable z
  Jet,       // f^(k)(z) for a named function, used by the chain rewrite
};

/// An interned indeterminate of the exact coefficient ring.
///
/// Symbols are created once and never destroyed; pointers are stable and
/// two symbols are the same iff their pointers are equal. Constant symbols
/// carry a canonical definition key (the printed expression they stand
/// for), so equal keys always yield the same constant.
struct Symbol {
  SymbolKind kind;
  std::string key;       // canonical text; for jets "f", "f'", "f''", ...
  std::string name;      // display name ("E" for exp(1)); equals key otherwise
  std::string function;  // jets only
  unsigned order = 0;    // jets only
};

const Symbol* constant_symbol(std::string_view key);
const Symbol* variable_symbol();
const Symbol* jet_symbol(std::string_view function, unsigned order);
const Symbol* pi_symbol();

/// Total order used for monomial ordering: constants, then z, then jets;
/// within a kind by key.
bool symbol_less(const Symbol* a, const Symbol* b);

std::string jet_key(std::string_view function, unsigned order);

}  // namespace adeq
