#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "adeq/exact_scalar.hpp"
#include "adeq/expand.hpp"
#include "adeq/expression.hpp"
#include "adeq/series.hpp"

namespace adeq {

/// M_m = y0^m0 * y1^m1 * ... * yn^mn; trailing zero exponents are trimmed,
/// so the empty vector is the constant monomial 1.
class DiffMonomial {
 public:
  DiffMonomial() = default;
  explicit DiffMonomial(std::vector<unsigned> exponents);
  /// The single variable y_k.
  static DiffMonomial variable(unsigned k);

  const std::vector<unsigned>& exponents() const { return m_; }
  unsigned exponent(std::size_t k) const { return k < m_.size() ? m_[k] : 0; }
  bool is_one() const { return m_.empty(); }
  unsigned weight() const;
  unsigned degree() const;
  /// Highest derivative present; 0 for the constant monomial.
  unsigned order() const { return m_.empty() ? 0 : static_cast<unsigned>(m_.size() - 1); }

  DiffMonomial operator*(const DiffMonomial& o) const;
  friend bool operator==(const DiffMonomial& a, const DiffMonomial& b) { return a.m_ == b.m_; }

  /// "y0*y2", "y1^2", "1".
  std::string to_string() const;

 private:
  std::vector<unsigned> m_;
};

/// Monomial order: weight, then degree, then lexicographic on exponent
/// vectors. Returns -1, 0, 1.
int compare(const DiffMonomial& a, const DiffMonomial& b);

struct DiffMonomialAscending {
  bool operator()(const DiffMonomial& a, const DiffMonomial& b) const { return compare(a, b) < 0; }
};
struct DiffMonomialDescending {
  bool operator()(const DiffMonomial& a, const DiffMonomial& b) const { return compare(a, b) > 0; }
};

/// Rational functions of z (with exact-scalar coefficients) are plain
/// ExactScalars containing the variable symbol.
using RationalCoefficient = ExactScalar;

ExactScalar z_scalar();
/// max(deg num, deg den) in z.
unsigned coefficient_degree(const RationalCoefficient& c);

/// P = sum a_m M_m, stored leading term first; no stored coefficient is zero.
class DiffPolynomial {
 public:
  using Terms = std::map<DiffMonomial, RationalCoefficient, DiffMonomialDescending>;

  DiffPolynomial() = default;
  static DiffPolynomial term(const RationalCoefficient& c, const DiffMonomial& m);
  static DiffPolynomial constant(const RationalCoefficient& c) { return term(c, {}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const DiffMonomial& leading_monomial() const;
  const RationalCoefficient& coefficient(const DiffMonomial& m) const;
  std::vector<DiffMonomial> support() const;

  /// max weight over the support; throws DomainError for P = 0.
  unsigned weight() const;
  /// Highest derivative index appearing.
  unsigned order() const;
  unsigned max_coefficient_degree() const;

  DiffPolynomial operator-() const;
  DiffPolynomial& operator+=(const DiffPolynomial& o);
  DiffPolynomial& operator-=(const DiffPolynomial& o);
  friend DiffPolynomial operator+(DiffPolynomial a, const DiffPolynomial& b) { return a += b; }
  friend DiffPolynomial operator-(DiffPolynomial a, const DiffPolynomial& b) { return a -= b; }
  friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator*(const RationalCoefficient& c, const DiffPolynomial& p);
  friend bool operator==(const DiffPolynomial& a, const DiffPolynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const DiffPolynomial& a, const DiffPolynomial& b) { return !(a == b); }

  /// Canonical text, e.g. "y0*y2 - y1^2 - y0*y1".
  std::string to_string() const;

 private:
  void add_term(const DiffMonomial& m, const RationalCoefficient& c);
  Terms terms_;
};

unsigned weight(const DiffMonomial& m);
unsigned weight(const DiffPolynomial& p);

/// Polynomial coefficients, content removed, leading coefficient of the
/// leading monomial made monic. Throws DomainError for P = 0.
DiffPolynomial normalize(const DiffPolynomial& p);

/// Parses the y0..y9 format; coefficients use the expression grammar.
DiffPolynomial parse_diffpoly(std::string_view text);

/// Series of the coefficient a(z) about `center` (exact mode) to `order`.
PowerSeries coefficient_series(const RationalCoefficient& a, const PowerSeries& var);

/// Series of P applied to a function given by its own series about the
/// same center. `f` must have order >= order + P.order().
PowerSeries apply(const DiffPolynomial& p, const PowerSeries& f, const ExactScalar& center, std::size_t order);

/// Series of P[f] for a closed-form f.
PowerSeries apply(const DiffPolynomial& p, const Expression& f, const ExactScalar& center, std::size_t order,
                  const DefinitionEnvironment& env = {}, const ExpansionOptions& options = {});

}  // namespace adeq
