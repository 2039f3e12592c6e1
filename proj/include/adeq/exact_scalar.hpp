#pragma once

#include <map>
#include <string>

#include "adeq/poly.hpp"

namespace adeq {

/// Element of the fraction field Q(i)(s_1, ..., s_k) over interned symbols.
///
/// Normal form: gcd(num, den) = 1 and den monic (leading graded-lex
/// coefficient 1). Two values are equal iff their normal forms are
/// identical, so equality is a syntactic comparison.
class ExactScalar {
 public:
  ExactScalar() : den_(1) {}
  ExactScalar(long v) : num_(v), den_(1) {}                // NOLINT(google-explicit-constructor)
  ExactScalar(GaussRational v) : num_(std::move(v)), den_(1) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(Poly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(Poly num, Poly den);

  static ExactScalar symbol(const Symbol* s) { return {Poly::symbol(s)}; }
  static ExactScalar rational(long num, long den) { return {GaussRational(mpq_class(num, den))}; }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  /// True when the value lies in Q(i) (no symbols).
  bool is_gauss_rational() const { return num_.is_constant() && den_.is_one(); }
  GaussRational gauss_value() const { return num_.constant_value(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool contains(const Symbol* s) const { return num_.contains(s) || den_.contains(s); }
  std::vector<const Symbol*> symbols() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);
  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

  ExactScalar pow(unsigned e) const;
  ExactScalar inverse() const;
  /// Partial derivative with respect to a symbol.
  ExactScalar derivative(const Symbol* s) const;
  ExactScalar substitute(const Symbol* s, const ExactScalar& value) const;
  /// Evaluates at Gaussian-rational values of every symbol; throws
  /// std::domain_error when the denominator vanishes there.
  GaussRational evaluate(const std::map<const Symbol*, GaussRational>& values) const;

  /// Canonical text in the expression grammar.
  std::string to_string() const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

}  // namespace adeq
