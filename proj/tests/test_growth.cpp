#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "adeq/errors.hpp"
#include "adeq/growth.hpp"

using namespace adeq;

namespace {

DefinitionEnvironment exp_env() {
  DefinitionEnvironment env;
  env.define("f", "exp(z)");
  env.define("g", "iter(f,2)");
  return env;
}

}  // namespace

TEST_CASE("maximum modulus in log scale") {
  const auto env = exp_env();
  const Expression f = parse_expression("f", env);
  for (double r : {0.5, 2.5, 7.0}) CHECK(max_modulus(f, r, 64, env).value == doctest::Approx(r));
  CHECK(std::exp(max_modulus(parse_expression("z^3"), 2.0, 64).value) == doctest::Approx(8.0));
  CHECK(max_modulus(parse_expression("g", env), 3.0, 256, env).value == doctest::Approx(std::exp(3.0)));
  // e^{e^{e^4}} overflows doubles but not its logarithm
  const GrowthSample tower = max_modulus(parse_expression("iter(f,3)", env), 4.0, 64, env);
  CHECK_FALSE(tower.overflow);
  CHECK(tower.value == doctest::Approx(std::exp(std::exp(4.0))));
}

TEST_CASE("sample count and radius preconditions") {
  const Expression f = parse_expression("exp(z)");
  CHECK_THROWS_AS(max_modulus(f, 1.0, 32), DomainError);
  CHECK_THROWS_AS(max_modulus(f, 1.0, 100), DomainError);
  CHECK_THROWS_AS(characteristic(f, -1.0, 64), DomainError);
}

TEST_CASE("maximum modulus is monotone in r and under refinement") {
  const Expression f = parse_expression("sin(z) + z^2");
  double prev = -1e300;
  for (double r = 0.5; r <= 6; r += 0.5) {
    const double v = max_modulus(f, r, 256).value;
    CHECK(v >= prev);
    prev = v;
    CHECK(max_modulus(f, r, 512).value >= max_modulus(f, r, 256).value - 1e-15);
  }
}

TEST_CASE("characteristic of exp is r/pi") {
  const Expression f = parse_expression("exp(z)");
  for (double r : {1.0, 5.0, 10.0}) {
    const double t = characteristic(f, r, 4096).value;
    CHECK(std::abs(t - r / std::numbers::pi) <= 1e-4 * r / std::numbers::pi);
    CHECK(std::abs(characteristic(f, r, 8192).value - t) <= 1e-4 * t);
  }
  CHECK(characteristic(parse_expression("1/2"), 3.0, 64).value == 0);
  CHECK(characteristic(parse_expression("z^2"), std::numbers::e, 4096).value == doctest::Approx(2.0));
}

TEST_CASE("T is bounded by the positive part of log M") {
  for (const char* e : {"exp(z)", "sin(z)", "z + exp(z)", "exp(z^2)"}) {
    const Expression f = parse_expression(e);
    for (double r : {0.5, 1.0, 3.0}) CHECK(characteristic(f, r, 1024).value <= std::max(0.0, max_modulus(f, r, 1024).value) + 1e-6);
  }
}

TEST_CASE("Baker exponent scan") {
  const auto env = exp_env();
  const Expression f = parse_expression("f", env), g = parse_expression("g", env);
  const auto r = baker_scan(f, g, 5, {2, 3, 4}, env);
  REQUIRE(r);
  CHECK(r->p == 3);
  for (std::size_t i = 0; i < r->margins.size(); ++i) {
    CHECK(r->margins[i] > 1e-9);
    if (i) CHECK(r->margins[i] > r->margins[i - 1]);
  }
  REQUIRE(r->rejected.size() == 2);
  CHECK(r->rejected[1] == "p=2: margin 0 at r=2");

  const auto self = baker_scan(f, f, 5, {1, 2}, env);
  REQUIRE(self);
  CHECK(self->p == 2);

  CHECK_FALSE(baker_scan(f, parse_expression("iter(f,4)", env), 3, {1, 2}, env));
  CHECK_THROWS_AS(baker_scan(parse_expression("z^2"), parse_expression("z^3"), 5, {1, 2}, env), DomainError);
  CHECK_THROWS_AS(baker_scan(f, g, 5, {3, 2}, env), DomainError);
}

TEST_CASE("inequality table") {
  const auto env = exp_env();
  const Expression f = parse_expression("f", env);
  const InequalityReport rep = inequality_suite(f, f, {1, 2, 4, 10}, 0.25, env);
  auto row = [&](const char* check, const char* subject, double r) -> const InequalityRow& {
    for (const InequalityRow& x : rep.rows)
      if (x.check == check && x.subject == subject && x.r == r) return x;
    FAIL("missing row");
    return rep.rows.front();
  };
  // M(c M(2, exp), exp) = exp(0.25 e^2) against M(4, exp(exp)) = exp(e^4)
  const InequalityRow& polya = row("polya", "f(g)", 4);
  CHECK(polya.pass);
  CHECK(polya.rhs == doctest::Approx(0.25 * std::exp(2.0)));
  CHECK(polya.lhs == doctest::Approx(std::exp(4.0)));

  const InequalityRow& lower = row("sandwich_lower", "f", 10);
  const InequalityRow& upper = row("sandwich_upper", "f", 10);
  CHECK(lower.pass);
  CHECK(upper.pass);
  CHECK(lower.lhs == doctest::Approx(10 / std::numbers::pi).epsilon(1e-5));
  CHECK(upper.rhs == doctest::Approx(60 / std::numbers::pi).epsilon(1e-5));

  for (const InequalityRow& x : rep.rows)
    if (x.check == "convexity" || x.check == "U") CHECK(x.pass);
  REQUIRE(rep.t_r4_threshold);
  CHECK(*rep.t_r4_threshold == 2);
  CHECK_FALSE(row("r4", "f", 10).pass);  // c M(r/4) > r^4 only for larger r
  CHECK_THROWS_AS(inequality_suite(f, f, {1, 2}, 0, env), DomainError);
}

TEST_CASE("CSV and JSON emission") {
  const Expression f = parse_expression("exp(z)");
  const std::string csv = samples_csv({characteristic(f, 1.0, 64)});
  CHECK(csv.rfind("kind,r,value,samples\ncharacteristic,1,", 0) == 0);
  CHECK(report_json(inequality_suite(f, f, {1, 2, 3}, 0.25, {}, 64), -1).rfind("{\"rows\":[{\"check\":\"polya\"", 0) == 0);
  CHECK(baker_json(std::nullopt, -1) == "{\"status\":\"none\",\"p\":null}");
}
