#include <doctest.h>

#include "adeq/diffpoly.hpp"
#include "adeq/errors.hpp"
#include "adeq/expand.hpp"

using namespace adeq;

namespace {

DiffPolynomial P(std::string_view s) { return parse_diffpoly(s); }

std::size_t error_offset(std::string_view text) {
  try {
    parse_diffpoly(text);
  } catch (const ParseError& e) {
    return e.offset;
  }
  return std::string_view::npos;
}

}  // namespace

TEST_CASE("monomial weight, degree and order") {
  const DiffMonomial m({1, 0, 2});  // y0 * y2^2
  CHECK(m.degree() == 3);
  CHECK(weight(m) == 4);
  CHECK(m.order() == 2);
  CHECK(m.to_string() == "y0*y2^2");
  CHECK(DiffMonomial({0, 0, 0}) == DiffMonomial());
}

TEST_CASE("monomial order is weight, then degree, then lexicographic") {
  CHECK(compare(DiffMonomial({0, 1}), DiffMonomial({2})) > 0);     // y1 vs y0^2: weight 1 vs 0
  CHECK(compare(DiffMonomial({1, 1}), DiffMonomial({0, 1})) > 0);  // equal weight, degree 2 vs 1
  CHECK(compare(DiffMonomial({1, 0, 1}), DiffMonomial({0, 2})) != 0);
  CHECK(P("y0*y1 + y2 + y1^2").to_string() == P("y1^2 + y0*y1 + y2").to_string());
}

TEST_CASE("canonical printing") {
  CHECK(P("y2 - y1 + 1").to_string() == "y2 - y1 + 1");
  CHECK(P("y0*y2-y1^2-y0*y1").to_string() == "y0*y2 - y1^2 - y0*y1");
  CHECK(P("y1 - 2*z*y0").to_string() == "y1 - 2*z*y0");
  CHECK(P("(z+1)*y1 - y0").to_string() == "(z+1)*y1 - y0");
  CHECK(P("0").is_zero());
}

TEST_CASE("ring operations") {
  const DiffPolynomial a = P("y1 - y0"), b = P("y1 + y0");
  CHECK(a * b == P("y1^2 - y0^2"));
  CHECK(a + b == P("2*y1"));
  CHECK((a - a).is_zero());
  CHECK(P("z*y0").max_coefficient_degree() == 1);
}

TEST_CASE("normalize clears denominators and makes the leading coefficient monic") {
  CHECK(normalize(P("2*y1 - 4*y0")) == P("y1 - 2*y0"));
  CHECK(normalize(P("-y2 - y0")) == P("y2 + y0"));
  CHECK(normalize(P("1/3*y1 + 1/6")) == P("2*y1 + 1"));
  CHECK(normalize(P("(z/(z-1))*y1 - (1/(z-1))*y0")) == P("z*y1 - y0"));
  CHECK(normalize(P("i*y1 - i*y0")) == P("y1 - y0"));
  CHECK(normalize(P("(1/2*z+1/3)*y1 - y0")) == P("(3*z+2)*y1 - 6*y0"));
  CHECK(normalize(normalize(P("6*z*y1 + 3*y0"))) == normalize(P("6*z*y1 + 3*y0")));
}

TEST_CASE("weight of zero is an error") {
  CHECK_THROWS_AS(DiffPolynomial().weight(), DomainError);
}

TEST_CASE("parse errors") {
  CHECK(error_offset("y-1 + y0") == 1);
  CHECK(error_offset("y1 +") != std::string_view::npos);
  CHECK_THROWS_AS(P("f*y1"), ParseError);
  CHECK_NOTHROW(P("exp(1)*y1 - y0"));
}

TEST_CASE("application to known functions") {
  const DefinitionEnvironment env;
  auto residual = [&](std::string_view p, std::string_view f, long center = 0) {
    return apply(P(p), parse_expression(f), center, 20, env);
  };
  CHECK(residual("y1 - y0", "exp(z)").is_zero());
  CHECK(residual("y2 + y0", "sin(z)").is_zero());
  CHECK(residual("y2 - y1 + 1", "z + exp(z)").is_zero());
  CHECK(residual("y0*y2 - y1^2 - y0*y1", "exp(exp(z))").is_zero());
  CHECK(residual("y1 - 2*z*y0", "exp(z^2)", 1).is_zero());
  CHECK_FALSE(residual("y1 - y0", "sin(z)").is_zero());
}

TEST_CASE("apply is linear and multiplicative on monomials") {
  const DefinitionEnvironment env;
  const Expression f = parse_expression("z + exp(sin(z))");
  const std::size_t n = 12;
  const char* polys[] = {"y1 - y0", "z*y2^2 + 3", "y0*y1*y4 - 1/2*y3", "(z^2+1)*y2 - i*y0^2"};
  for (const char* a : polys)
    for (const char* b : polys) {
      const DiffPolynomial p = P(a), q = P(b);
      const ExactScalar alpha = ExactScalar::rational(2, 3), beta = z_scalar();
      CHECK(series_equal(apply(alpha * p + beta * q, f, 0, n, env),
                         scale(apply(p, f, 0, n, env), alpha) +
                             apply(q, f, 0, n, env) * expand_series(parse_expression("z"), 0, n)));
      CHECK((p * q).weight() == p.weight() + q.weight());
    }
  const DiffMonomial m({1, 2}), k({0, 1, 1});
  CHECK(series_equal(apply(DiffPolynomial::term(1, m * k), f, 0, n, env),
                     apply(DiffPolynomial::term(1, m), f, 0, n, env) * apply(DiffPolynomial::term(1, k), f, 0, n, env)));
}

TEST_CASE("normalize preserves vanishing") {
  const DefinitionEnvironment env;
  const Expression f = parse_expression("exp(z^2)");
  const DiffPolynomial p = P("(1/(z+2))*y1 - (2*z/(z+2))*y0");
  CHECK(apply(p, f, 0, 15, env).is_zero());
  CHECK(apply(normalize(p), f, 0, 15, env).is_zero());
  CHECK(normalize(p) == P("y1 - 2*z*y0"));
}
