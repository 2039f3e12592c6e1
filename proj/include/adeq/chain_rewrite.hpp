#pragma once

#include <map>
#include <string>
#include <vector>

#include "adeq/diffpoly.hpp"
#include "adeq/exact_scalar.hpp"
#include "adeq/expression.hpp"

namespace adeq {

/// Rational function in z and the jets f, f', ..., g, g', ... of two named
/// functions. Jets are interned symbols named after the functions.
using JetFraction = ExactScalar;
using GPolynomial = std::map<DiffMonomial, JetFraction, DiffMonomialDescending>;

/// P[f](g) rewritten as sum_m b_m * M_m[g](f). Keys are exponent vectors over
/// G_j = g^(j)(f); coefficients are kept both as expressions and as jet
/// fractions (the latter drive verification).
struct TransferExpression {
  struct Term {
    DiffMonomial g_monomial;
    Expression coefficient;
    JetFraction rational;
  };

  std::string f_name = "f";
  std::string g_name = "g";
  std::vector<Term> terms;  // leading G-monomial first

  bool is_zero() const { return terms.empty(); }
  std::vector<DiffMonomial> support() const;
  /// "G2*(f'^2/g'^2) + G1*(...) + 1"
  std::string to_string() const;
};

/// Transfer of f^(k)(g). Results are memoized per (k, f, g).
TransferExpression derivative_transfer(unsigned k, const std::string& f_name = "f", const std::string& g_name = "g");

TransferExpression transfer_diffpoly(const DiffPolynomial& p, const std::string& f_name = "f",
                                     const std::string& g_name = "g");

/// Max G-monomial weight; throws DomainError for T = 0.
unsigned max_weight(const TransferExpression& t);

struct TransferCheck {
  bool holds = false;
  /// Max weight over monomials whose coefficient series is nonzero at the
  /// checked order (can be below max_weight when coefficients cancel).
  unsigned nonvanishing_weight = 0;
  ExactScalar center;
};

/// Compares the series of P[f](g) and sum b_m M_m[g](f) about `center`.
/// `f` and `g` are expressions over `env`; T's jets map to their derivatives.
TransferCheck check_transfer(const TransferExpression& t, const DiffPolynomial& p, const Expression& f,
                             const Expression& g, std::size_t order, const DefinitionEnvironment& env,
                             const ExactScalar& center = ExactScalar());
bool verify_transfer(const TransferExpression& t, const DiffPolynomial& p, const Expression& f, const Expression& g,
                     std::size_t order, const DefinitionEnvironment& env, const ExactScalar& center = ExactScalar());

/// First of 0, 1, -1, 2, 1/2, ... where g' does not vanish, so the powers
/// of 1/g' in transfer coefficients have no pole there.
ExactScalar transfer_center(const Expression& g, const DefinitionEnvironment& env);

/// Jet-fraction <-> expression conversion. Jets print as f, f', g'', ...
Expression from_rational(const JetFraction& x);
/// Accepts z, constants, jets written as names with primes, and
/// exp/sin/cos of constants.
JetFraction to_rational(const Expression& e);

}  // namespace adeq
