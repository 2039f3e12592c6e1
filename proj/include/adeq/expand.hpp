#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "adeq/exact_scalar.hpp"
#include "adeq/expression.hpp"
#include "adeq/series.hpp"

namespace adeq {

struct ExpansionOptions {
  SeriesMode mode = SeriesMode::Exact;
  /// When false, exact expansion fails instead of adjoining a new constant
  /// such as exp(1/2) or sin(3).
  bool allow_adjunction = true;
  NumericTolerance tolerance;
};

/// Taylor expansion of expressions about arbitrary centers.
///
/// Expansions of named definitions are cached per (name, center), so one
/// expander should be reused across related calls.
class SeriesExpander {
 public:
  explicit SeriesExpander(const DefinitionEnvironment& env, ExpansionOptions options = {});

  PowerSeries expand(const Expression& e, const ExactScalar& center, std::size_t order);
  /// Numeric mode only.
  PowerSeries expand_numeric(const Expression& e, std::complex<double> center, std::size_t order);

  /// Series of the named definition itself at a center given as the
  /// constant term of `at`.
  PowerSeries expand_definition(const std::string& name, const PowerSeries& at, std::size_t order);

  const DefinitionEnvironment& environment() const { return env_; }
  const ExpansionOptions& options() const { return options_; }

 private:
  PowerSeries rec(const Expression& e, const PowerSeries& var, std::size_t order);
  PowerSeries elementary(NodeKind kind, const PowerSeries& a);
  PowerSeries compose_at(const std::string& name, unsigned k, const PowerSeries& inner);

  const DefinitionEnvironment& env_;
  ExpansionOptions options_;
  std::map<std::pair<std::string, std::string>, PowerSeries> cache_;
};

/// One-shot expansion; see SeriesExpander.
PowerSeries expand_series(const Expression& e, const ExactScalar& center, std::size_t order,
                          const DefinitionEnvironment& env = {}, const ExpansionOptions& options = {});

/// exp(u) for a constant u, applying the quarter-period rule for pi*i
/// terms, E^n for integer parts, and adjoining exp(rest) otherwise.
ExactScalar exact_exp(const ExactScalar& u, bool allow_adjunction = true);
/// (sin u, cos u) with the same conventions.
std::pair<ExactScalar, ExactScalar> exact_sin_cos(const ExactScalar& u, bool allow_adjunction = true);

}  // namespace adeq
