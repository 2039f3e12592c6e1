#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adeq/diffpoly.hpp"
#include "adeq/expand.hpp"
#include "adeq/series.hpp"

namespace adeq {

struct AnsatzBounds {
  unsigned max_order = 2;         // n: highest derivative
  unsigned max_degree = 2;        // d: total degree of a monomial
  std::optional<unsigned> max_weight;  // unbounded when empty
  unsigned max_coeff_degree = 0;  // c: degree of the polynomial coefficients in z
  std::optional<std::size_t> solve_order;   // default: unknowns + 10
  std::optional<std::size_t> verify_order;  // default: solve order + margin
  std::size_t verify_margin = 10;
};

/// Shape of the linear system behind a search.
struct RankReport {
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;

  bool full_rank() const { return rank == unknowns; }
};

enum class SearchStatus {
  Found,
  NoRelation,          // the system has full rank, or the bounds were exhausted
  VerificationFailed,  // kernel vectors exist but fail at the verify order
};

const char* to_string(SearchStatus s);

/// sum_j p_j(z) F_j = 0 with polynomial p_j.
struct RelationCertificate {
  std::vector<RationalCoefficient> coefficients;
  std::size_t verified_order = 0;
};

struct RelationResult {
  SearchStatus status = SearchStatus::NoRelation;
  std::optional<RelationCertificate> certificate;
  RankReport rank;
  std::size_t solve_order = 0;
  std::size_t verify_order = 0;
};

/// Searches for polynomials p_j of degree <= c in z with sum p_j F_j = 0.
/// All series must be exact, about `center`, of order >= the verify order.
RelationResult find_polynomial_relation(const std::vector<PowerSeries>& series, unsigned coeff_degree,
                                        std::optional<std::size_t> solve_order = {},
                                        std::optional<std::size_t> verify_order = {},
                                        const ExactScalar& center = ExactScalar(),
                                        std::size_t verify_margin = 10);

/// Monomials within the bounds, in ascending monomial order.
std::vector<DiffMonomial> enumerate_monomials(const AnsatzBounds& bounds);

struct AdeResult {
  SearchStatus status = SearchStatus::NoRelation;
  std::optional<DiffPolynomial> ade;
  std::size_t support_size = 0;
  RankReport rank;
  std::size_t solve_order = 0;
  std::size_t verify_order = 0;
};

/// A function known only through its exact Taylor coefficients.
struct RawSeries {
  PowerSeries series;
  ExactScalar center;
};

/// Exact value of a constant expression such as "1/2", "2*pi*i" or "exp(1)".
ExactScalar parse_constant(std::string_view text);

/// Reads the "order N" / "center c" / "k: scalar" format.
RawSeries parse_raw_series(std::string_view text);
std::string format_raw_series(const RawSeries& raw);

AdeResult find_ade(const Expression& f, const AnsatzBounds& bounds, const DefinitionEnvironment& env = {},
                   const std::optional<std::vector<DiffMonomial>>& support = {},
                   const ExactScalar& center = ExactScalar());
AdeResult find_ade(const RawSeries& f, const AnsatzBounds& bounds,
                   const std::optional<std::vector<DiffMonomial>>& support = {});

/// apply(P, f) vanishes to `order` in exact mode.
bool verify_annihilator(const DiffPolynomial& p, const Expression& f, std::size_t order,
                        const DefinitionEnvironment& env = {}, const ExactScalar& center = ExactScalar());

}  // namespace adeq
