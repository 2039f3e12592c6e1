#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adeq/chain_rewrite.hpp"
#include "adeq/diffpoly.hpp"
#include "adeq/discovery.hpp"
#include "adeq/expression.hpp"

namespace adeq {

/// f(g) = g(f) as series about `center` to `order`. Numeric mode compares
/// with the expansion tolerance.
bool check_permutable(const Expression& f, const Expression& g, std::size_t order, const DefinitionEnvironment& env,
                      const ExpansionOptions& options = {}, const ExactScalar& center = ExactScalar());

/// Ceilings for the Ostrowski search: monomial degree up to max_degree,
/// weight from w(P_f)+w(Q_g) up to max_weight, coefficient degree up to
/// max_coeff_degree. Derivative order equals the current weight.
struct ComposeBounds {
  unsigned max_degree = 3;
  std::optional<unsigned> max_weight;  // default: starting weight + 2
  unsigned max_coeff_degree = 2;
  std::size_t check_order = 20;  // annihilator precondition
  std::optional<std::size_t> verify_order;
};

struct ComposeResult {
  SearchStatus status = SearchStatus::NoRelation;
  std::optional<DiffPolynomial> ade;
  std::size_t last_support_size = 0;
  std::size_t verify_order = 0;
  std::vector<std::string> trace;
};

/// An ADE for f(g) from ADEs of f and g (Ostrowski), by bounded search.
ComposeResult compose_ade(const DiffPolynomial& p_f, const DiffPolynomial& q_g, const Expression& f,
                          const Expression& g, const ComposeBounds& bounds, const DefinitionEnvironment& env);

/// An ADE for the n-fold iterate of f, folding compose_ade.
ComposeResult iterate_ade(const Expression& f, const DiffPolynomial& p, unsigned n, const ComposeBounds& bounds,
                          const DefinitionEnvironment& env);

/// f composed with itself n times.
Expression iterate_expression(const Expression& f, unsigned n);

struct TransferOptions {
  unsigned q = 1;
  /// Tries q, q+1, ..., q_max when the search at q fails.
  bool auto_escalate = true;
  unsigned q_max = 3;
  unsigned max_coeff_degree = 3;
  std::size_t permutability_order = 16;
  std::size_t chain_order = 20;
  std::size_t verify_order = 40;
  ComposeBounds iterate_bounds;
  bool timing = true;
};

struct TransferReport {
  std::string status;  // ok, not_permutable, invalid_ade, chain_failed, exhausted
  DiffPolynomial input_ade;
  unsigned q = 1;
  std::optional<DiffPolynomial> intermediate_ade;
  std::optional<TransferExpression> transfer;
  std::vector<DiffMonomial> support_J;
  std::optional<DiffPolynomial> output_ade;
  std::size_t verified_order = 0;
  unsigned syntactic_weight = 0;
  unsigned nonvanishing_weight = 0;
  std::vector<std::string> escalations;
  double wall_time_ms = 0;

  bool ok() const { return status == "ok"; }
};

/// The constructive proof: P[f] = 0 and f(g) = g(f) give an ADE for g.
TransferReport transfer_ade(const Expression& f, const DiffPolynomial& p, const Expression& g,
                            const DefinitionEnvironment& env, const TransferOptions& options = {});

/// JSON object with status, q, intermediate_ade, support_J, output_ade,
/// verified_order, escalations, wall_time_ms.
std::string to_json(const TransferReport& r, int indent = 2);

}  // namespace adeq
