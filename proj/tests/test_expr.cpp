#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "adeq/errors.hpp"
#include "adeq/evaluate.hpp"
#include "adeq/expand.hpp"
#include "adeq/expression.hpp"
#include "adeq/pipeline.hpp"

using namespace adeq;

namespace {

Expression parse(std::string_view s, const DefinitionEnvironment& env = {}) { return parse_expression(s, env); }

std::size_t error_offset(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.offset;
  }
  return std::string_view::npos;
}

struct RandomExpression {
  std::mt19937 rng{777u};

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Expression leaf() {
    switch (pick(0, 4)) {
      case 0: return Expression::var();
      case 1: return Expression::lit(mpq_class(pick(-9, 9), pick(1, 5)));
      case 2: return Expression::imag_unit();
      case 3: return Expression::pi();
      default: return Expression::ref("f", pick(0, 2));
    }
  }

  Expression make(int depth) {
    if (depth == 0) return leaf();
    switch (pick(0, 10)) {
      case 0: return Expression::add(make(depth - 1), make(depth - 1));
      case 1: return Expression::sub(make(depth - 1), make(depth - 1));
      case 2: return Expression::mul(make(depth - 1), make(depth - 1));
      case 3: return Expression::div(make(depth - 1), make(depth - 1));
      case 4: return Expression::pow(make(depth - 1), pick(2, 4));
      case 5: return Expression::neg(make(depth - 1));
      case 6: return Expression::exp(make(depth - 1));
      case 7: return Expression::sin(make(depth - 1));
      case 8: return Expression::cos(make(depth - 1));
      case 9: return Expression::compose("f", pick(0, 1), make(depth - 1));
      default: return leaf();
    }
  }
};

// Central difference; oracle for symbolic differentiation.
std::complex<double> numeric_derivative(const Expression& e, std::complex<double> z, const DefinitionEnvironment& env) {
  const double h = 1e-5;
  return (eval_numeric(e, z + h, env).value - eval_numeric(e, z - h, env).value) / (2 * h);
}

}  // namespace

TEST_CASE("canonical printing") {
  CHECK(parse("z+exp(z)+2*pi*i").to_string() == "z+exp(z)+2*pi*i");
  CHECK(parse("(z+1)*(z-1)").to_string() == "(z+1)*(z-1)");
  CHECK(parse("-z^2").to_string() == "-z^2");
  CHECK(parse("(-z)^2").to_string() == "(-z)^2");
  CHECK(parse("1/(2/3)").to_string() == "1/(2/3)");
  CHECK(parse("a - (b - c)", [] {
          DefinitionEnvironment env;
          env.define("a", "z");
          env.define("b", "exp(z)");
          env.define("c", "sin(z)");
          return env;
        }())
            .to_string() == "a-(b-c)");
}

TEST_CASE("parse errors carry byte offsets") {
  CHECK(error_offset("exp(") == 4);
  CHECK(error_offset("z +* 2") == 3);
  CHECK(error_offset("2*q") == 2);
  CHECK(error_offset("sin(z))") == 6);
  CHECK(error_offset("z^1.5") != std::string_view::npos);
}

TEST_CASE("definitions resolve only backwards") {
  DefinitionEnvironment env;
  env.define_from_flag("f=exp(z)");
  env.define_from_flag("g=iter(f,2)");
  CHECK(env.contains("g"));
  CHECK_THROWS_AS(env.define_from_flag("h=k(z)"), ParseError);
  CHECK_THROWS_AS(env.define_from_flag("exp=z"), Error);
  CHECK_THROWS_AS(env.lookup("nope"), ExpansionError);
}

TEST_CASE("round trip on generated expressions") {
  DefinitionEnvironment env;
  env.define("f", "exp(z)");
  RandomExpression gen;
  int n = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Expression e = gen.make(3);
    const std::string text = e.to_string();
    INFO(text);
    const Expression back = parse(text, env);
    CHECK(back == e);
    CHECK(back.to_string() == text);
    ++n;
  }
  CHECK(n == 50);
}

TEST_CASE("symbolic derivative matches finite differences") {
  DefinitionEnvironment env;
  env.define("f", "z + exp(z)");
  const char* cases[] = {"z^3 - 2*z", "exp(z^2)", "sin(z)*cos(2*z)", "1/(z+3)", "f", "f(f)", "iter(f,3)", "exp(sin(z))/2"};
  for (const char* text : cases) {
    INFO(text);
    const Expression e = parse(text, env);
    const Expression d = differentiate(e);
    for (std::complex<double> z : {std::complex<double>(0.3, 0.1), std::complex<double>(-0.7, 0.4)}) {
      const auto exact = eval_numeric(d, z, env).value;
      const auto approx = numeric_derivative(e, z, env);
      CHECK(std::abs(exact - approx) <= 1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
  CHECK(differentiate(parse("iter(f,2)", env)).to_string() == "f'(f)*f'");
}

TEST_CASE("exact expansion at nonzero centers") {
  const PowerSeries e = expand_series(parse("exp(z)"), 1, 3);
  CHECK(e.exact()[0].to_string() == "exp(1)");
  CHECK(e.exact()[2] == e.exact()[0] * ExactScalar::rational(1, 2));

  // exp(pi*i/2 + z) = i*exp(z)
  const PowerSeries r = expand_series(parse("exp(z + pi*i/2)"), 0, 4);
  CHECK(r.exact()[0] == ExactScalar(GaussRational::imaginary_unit()));

  ExpansionOptions strict;
  strict.allow_adjunction = false;
  CHECK_THROWS_AS(expand_series(parse("exp(z)"), ExactScalar::rational(1, 2), 3, {}, strict), ExpansionError);
}

TEST_CASE("exact and numeric expansions agree") {
  DefinitionEnvironment env;
  env.define("f", "z + exp(z)");
  env.define("g", "sin(z) + z^2");
  for (const char* text : {"f(g)", "g(f)", "exp(exp(z))", "cos(z)/(2 - z)", "iter(f,2)"}) {
    INFO(text);
    const Expression e = parse(text, env);
    const PowerSeries ex = expand_series(e, 0, 12, env);
    ExpansionOptions opts;
    opts.mode = SeriesMode::Numeric;
    SeriesExpander nx(env, opts);
    const PowerSeries nu = nx.expand_numeric(e, 0, 12);
    CHECK(series_equal(ex.to_numeric([](const ExactScalar& c) { return to_complex(c); }), nu));
  }
}

TEST_CASE("iterate law f^(m+n) = f^m(f^n)") {
  DefinitionEnvironment env;
  env.define("f", "z + exp(z)");
  const Expression f = parse("f", env);
  for (unsigned m = 1; m <= 2; ++m) {
    for (unsigned n = 1; n <= 2; ++n) {
      const PowerSeries lhs = expand_series(iterate_expression(f, m + n), 0, 10, env);
      const PowerSeries rhs = expand_series(substitute(iterate_expression(f, m), iterate_expression(f, n)), 0, 10, env);
      CHECK(series_equal(lhs, rhs));
    }
  }
}

TEST_CASE("log-scale evaluation survives towers") {
  const Expression tower = parse("exp(exp(exp(z)))");
  const LogValue v = eval_log(tower, 4.0);
  REQUIRE_FALSE(v.overflow);
  CHECK(v.value.log_abs() == doctest::Approx(std::exp(std::exp(4.0))).epsilon(1e-12));
  CHECK(eval_numeric(tower, 4.0).overflow);
}

TEST_CASE("derivative consistency with series differentiation") {
  RandomExpression gen;
  gen.rng.seed(99u);
  // no division, no references: every generated expression is entire
  std::function<Expression(int)> entire = [&](int depth) -> Expression {
    if (depth == 0) return gen.pick(0, 1) ? Expression::var() : Expression::lit(mpq_class(gen.pick(-4, 4), gen.pick(1, 3)));
    switch (gen.pick(0, 5)) {
      case 0: return Expression::add(entire(depth - 1), entire(depth - 1));
      case 1: return Expression::mul(entire(depth - 1), entire(depth - 1));
      case 2: return Expression::pow(entire(depth - 1), 2);
      case 3: return Expression::exp(entire(depth - 1));
      case 4: return Expression::sin(entire(depth - 1));
      default: return Expression::cos(entire(depth - 1));
    }
  };
  for (int trial = 0; trial < 25; ++trial) {
    const Expression e = entire(3);
    INFO(e.to_string());
    const std::size_t n = 8;
    const PowerSeries lhs = expand_series(differentiate(e), 0, n);
    const PowerSeries rhs = ps_derive(expand_series(e, 0, n + 1));
    CHECK(series_equal(lhs, rhs));
  }
}

TEST_CASE("partial sums agree with direct evaluation") {
  DefinitionEnvironment env;
  env.define("f", "z + exp(z)");
  for (const char* text : {"exp(z)", "sin(z)*z^2", "f(f)", "exp(exp(z))", "cos(z + 1/2)"}) {
    INFO(text);
    const Expression e = parse(text, env);
    for (double c : {0.0, 1.0}) {
      ExpansionOptions opts;
      opts.mode = SeriesMode::Numeric;
      SeriesExpander ex(env, opts);
      const PowerSeries s = ex.expand_numeric(e, c, 30);
      for (std::complex<double> h : {std::complex<double>(0.1, 0), std::complex<double>(-0.05, 0.08)}) {
        std::complex<double> sum = 0, hk = 1;
        for (const auto& a : s.numeric()) {
          sum += a * hk;
          hk *= h;
        }
        CHECK(std::abs(sum - eval_numeric(e, c + h, env).value) <= 1e-6);
      }
    }
  }
}

TEST_CASE("numeric evaluation") {
  CHECK(std::abs(eval_numeric(parse("exp(z)"), 1.0).value - std::exp(1.0)) < 1e-15);
  for (double t = 0; t < 6.3; t += 0.7)
    CHECK(std::abs(eval_numeric(parse("exp(z)"), std::complex<double>(0, t)).value) == doctest::Approx(1.0));
  CHECK(eval_numeric(parse("z + exp(z)"), 0.0).value == std::complex<double>(1, 0));
}

TEST_CASE("exp has period 2*pi*i in exact expansion") {
  CHECK(series_equal(expand_series(parse("exp(z + 2*pi*i)"), 0, 10), expand_series(parse("exp(z)"), 0, 10)));
  CHECK(series_equal(expand_series(parse("-exp(z + pi*i)"), 0, 10), expand_series(parse("exp(z)"), 0, 10)));
  CHECK(series_equal(expand_series(parse("sin(z + pi/2)"), 0, 10), expand_series(parse("cos(z)"), 0, 10)));
}
