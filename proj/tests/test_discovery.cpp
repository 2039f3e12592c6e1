#include <doctest.h>

#include "adeq/discovery.hpp"
#include "adeq/errors.hpp"

using namespace adeq;

namespace {

AnsatzBounds bounds(unsigned n, unsigned d, unsigned c = 0) {
  AnsatzBounds b;
  b.max_order = n;
  b.max_degree = d;
  b.max_coeff_degree = c;
  return b;
}

std::string found(const char* f, const AnsatzBounds& b) {
  const AdeResult r = find_ade(parse_expression(f), b);
  REQUIRE(r.status == SearchStatus::Found);
  // independent re-check of the certificate ten terms past the verify order
  CHECK(verify_annihilator(*r.ade, parse_expression(f), r.verify_order + 10));
  return r.ade->to_string();
}

}  // namespace

TEST_CASE("minimal ADEs of elementary functions") {
  CHECK(found("exp(z)", bounds(1, 1)) == "y1 - y0");
  CHECK(found("sin(z)", bounds(2, 1)) == "y2 + y0");
  CHECK(found("z + exp(z)", bounds(2, 1)) == "y2 - y1 + 1");
  CHECK(found("exp(exp(z))", bounds(2, 2)) == "y0*y2 - y1^2 - y0*y1");
  CHECK(found("exp(z^2)", bounds(1, 1, 1)) == "y1 - 2*z*y0");
}

TEST_CASE("no relation below the true order") {
  const AdeResult r = find_ade(parse_expression("sin(z)"), bounds(1, 1));
  CHECK(r.status == SearchStatus::NoRelation);
  CHECK(r.rank.full_rank());
}

TEST_CASE("polynomial relation among series") {
  const std::size_t n = 40;
  const DefinitionEnvironment env;
  auto s = [&](const char* e) { return expand_series(parse_expression(e), 0, n, env); };

  SUBCASE("sin^2 + cos^2 - 1") {
    const RelationResult r = find_polynomial_relation({s("sin(z)^2"), s("cos(z)^2"), s("1")}, 0);
    REQUIRE(r.status == SearchStatus::Found);
    const auto& c = r.certificate->coefficients;
    REQUIRE(c.size() == 3);
    CHECK(c[0] == ExactScalar(1));
    CHECK(c[1] == ExactScalar(1));
    CHECK(c[2] == ExactScalar(-1));
  }
  SUBCASE("exp(z) and exp(2z) are independent over polynomials") {
    const RelationResult r = find_polynomial_relation({s("exp(z)"), s("exp(2*z)")}, 3, 25);
    CHECK(r.status == SearchStatus::NoRelation);
    CHECK(r.rank.unknowns == 8);
    CHECK(r.rank.full_rank());
  }
  SUBCASE("relations with polynomial coefficients") {
    const RelationResult r = find_polynomial_relation({s("z*exp(z)"), s("exp(z)")}, 1);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(r.certificate->coefficients[0] == ExactScalar(1));
    CHECK(r.certificate->coefficients[1] == -z_scalar());
  }
}

TEST_CASE("monomial enumeration respects bounds") {
  AnsatzBounds b = bounds(2, 2);
  const auto all = enumerate_monomials(b);
  CHECK(all.size() == 10);  // monomials of degree <= 2 in y0, y1, y2
  b.max_weight = 1;
  for (const DiffMonomial& m : enumerate_monomials(b)) CHECK(weight(m) <= 1);
}

TEST_CASE("raw series input") {
  std::string text = "order 30\ncenter 0\n";
  mpz_class fact = 1;
  for (unsigned k = 0; k <= 30; ++k) {
    if (k) fact *= k;
    text += std::to_string(k) + ": 1/" + fact.get_str() + "\n";
  }
  const RawSeries exp_at_0 = parse_raw_series(text);
  const AdeResult r = find_ade(exp_at_0, bounds(1, 1));
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.ade->to_string() == "y1 - y0");

  const RawSeries back = parse_raw_series(format_raw_series(exp_at_0));
  CHECK(series_equal(back.series, exp_at_0.series));
  CHECK_THROWS_AS(parse_raw_series("0: 1\n"), Error);
}

TEST_CASE("series too short for the ansatz are rejected") {
  // exp known only to order 3: too few equations for a trustworthy search
  const RawSeries short_series = parse_raw_series("order 3\ncenter 0\n0: 1\n1: 1\n2: 1/2\n3: 1/6\n");
  CHECK_THROWS_AS(find_ade(short_series, bounds(2, 2)), DomainError);
}
