#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adeq/gauss_rational.hpp"
#include "adeq/symbol.hpp"

namespace adeq {

/// Power product of symbols, factors sorted by symbol_less, no zero exponents.
class Monomial {
 public:
  using Factor = std::pair<const Symbol*, unsigned>;

  Monomial() = default;
  static Monomial of(const Symbol* s, unsigned e = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  unsigned degree() const;
  unsigned exponent(const Symbol* s) const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  /// this / o; requires o.divides(*this).
  Monomial quotient(const Monomial& o) const;
  /// Drops the factor for s.
  Monomial without(const Symbol* s) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
};

/// Graded-lex comparison: -1, 0, 1.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

/// Sparse multivariate polynomial over Q(i) in interned symbols. Terms are
/// kept in descending graded-lex order, so the first term is the leading one.
class Poly {
 public:
  using Terms = std::map<Monomial, GaussRational, GrlexDescending>;

  Poly() = default;
  Poly(GaussRational c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(GaussRational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly symbol(const Symbol* s);
  static Poly term(GaussRational c, Monomial m);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Constant term value; only meaningful when is_constant().
  GaussRational constant_value() const;
  std::size_t size() const { return terms_.size(); }

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const GaussRational& leading_coefficient() const { return terms_.begin()->second; }
  unsigned total_degree() const;

  std::vector<const Symbol*> symbols() const;
  bool contains(const Symbol* s) const;
  unsigned degree_in(const Symbol* s) const;
  /// Coefficients of s^0, s^1, ..., as polynomials free of s.
  std::vector<Poly> coefficients_in(const Symbol* s) const;
  static Poly from_coefficients(const std::vector<Poly>& coeffs, const Symbol* s);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GaussRational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const GaussRational& c) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const;
  Poly monic() const;
  Poly derivative(const Symbol* s) const;
  /// Replaces every symbol by a value from `values`; missing symbols throw.
  GaussRational evaluate(const std::map<const Symbol*, GaussRational>& values) const;
  /// Substitutes s := replacement.
  Poly substitute(const Symbol* s, const Poly& replacement) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const GaussRational& c);
  Terms terms_;
};

/// Exact quotient a / b when b divides a, nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
/// Monic greatest common divisor (gcd(0, 0) = 0).
Poly gcd(const Poly& a, const Poly& b);

}  // namespace adeq
