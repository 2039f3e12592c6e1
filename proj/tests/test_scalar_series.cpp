#include <doctest.h>

#include <random>

#include "adeq/diffpoly.hpp"
#include "adeq/evaluate.hpp"
#include "adeq/exact_scalar.hpp"
#include "adeq/series.hpp"
#include "adeq/symbol.hpp"

using namespace adeq;

namespace {

ExactScalar q(long n, long d = 1) { return ExactScalar::rational(n, d); }
ExactScalar E() { return ExactScalar::symbol(constant_symbol("exp(1)")); }
ExactScalar I() { return ExactScalar(GaussRational::imaginary_unit()); }

mpz_class factorial(unsigned k) {
  mpz_class f = 1;
  for (unsigned j = 2; j <= k; ++j) f *= j;
  return f;
}

// Small random coefficients over Q(i)(E), occasionally involving E.
struct Generator {
  std::mt19937 rng{20240611u};

  ExactScalar scalar() {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4), pick(0, 5);
    ExactScalar x = q(num(rng), den(rng));
    const long p = pick(rng);
    if (p == 0) x += q(num(rng), den(rng)) * I();
    if (p == 1) x += q(num(rng), den(rng)) * E();
    return x;
  }

  PowerSeries series(std::size_t order, bool unit_constant = false) {
    std::vector<ExactScalar> c;
    for (std::size_t k = 0; k <= order; ++k) c.push_back(scalar());
    if (unit_constant && c[0].is_zero()) c[0] = q(1);
    return PowerSeries(std::move(c));
  }
};

}  // namespace

TEST_CASE("Gaussian rationals") {
  const GaussRational i = GaussRational::imaginary_unit();
  CHECK(i * i == GaussRational(-1));
  CHECK(GaussRational(mpq_class(1, 2), 1).conj() == GaussRational(mpq_class(1, 2), -1));
  CHECK(GaussRational(3, 4).norm() == 25);
  CHECK((GaussRational(1) / GaussRational(1, 1)) == GaussRational(mpq_class(1, 2), mpq_class(-1, 2)));
}

TEST_CASE("exact scalars normalize fractions") {
  const ExactScalar z = z_scalar();
  CHECK((z * z - q(1)) / (z - q(1)) == z + q(1));
  CHECK((E() * E()) / E() == E());
  CHECK((q(2) * z) / (q(4) * z * z) == q(1, 2) / z);
  CHECK((q(1, 3) + q(1, 6)).to_string() == "1/2");
  CHECK((z + E()).derivative(variable_symbol()) == q(1));
  CHECK(z.pow(3).substitute(variable_symbol(), q(2)) == q(8));
}

TEST_CASE("exp series has reciprocal factorial coefficients") {
  const PowerSeries e = ps_elementary(Elementary::Exp, PowerSeries::variable(SeriesMode::Exact, 15));
  REQUIRE(e.order() == 15);
  for (unsigned k = 0; k <= 15; ++k) {
    const mpq_class expect(1, factorial(k));
    CHECK(e.exact()[k] == ExactScalar(GaussRational(expect)));
  }
}

TEST_CASE("geometric series and sin/cos identities") {
  const std::size_t n = 12;
  const PowerSeries z = PowerSeries::variable(SeriesMode::Exact, n);
  const PowerSeries one = PowerSeries::constant(q(1), n);
  const PowerSeries geo = one / (one - z);
  for (const ExactScalar& c : geo.exact()) CHECK(c == q(1));

  const PowerSeries s = ps_elementary(Elementary::Sin, z), c = ps_elementary(Elementary::Cos, z);
  CHECK(series_equal(s * s + c * c, one));
  CHECK(series_equal(ps_derive(s), c.truncated(n - 1)));
}

TEST_CASE("randomized ring and derivation laws") {
  Generator gen;
  const std::size_t n = 6;
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const PowerSeries a = gen.series(n), b = gen.series(n), c = gen.series(n);
    const PowerSeries u = gen.series(n, true);
    CHECK(series_equal(a + b, b + a));
    CHECK(series_equal((a + b) + c, a + (b + c)));
    CHECK(series_equal(a * b, b * a));
    CHECK(series_equal((a * b) * c, a * (b * c)));
    CHECK(series_equal(a * (b + c), a * b + a * c));
    CHECK(series_equal(a - a, PowerSeries::zero(SeriesMode::Exact, n)));
    CHECK(series_equal((a * u) / u, a));
    CHECK(series_equal(ps_derive(a * b), ps_derive(a) * b + a * ps_derive(b)));

    // chain rule on a composition with vanishing inner constant term
    const PowerSeries inner = b.without_constant();
    CHECK(series_equal(ps_derive(ps_compose(a, inner)), ps_compose(ps_derive(a), inner) * ps_derive(inner)));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("truncation takes the minimum order") {
  const PowerSeries a = PowerSeries::variable(SeriesMode::Exact, 8);
  const PowerSeries b = PowerSeries::constant(q(3), 4);
  CHECK((a + b).order() == 4);
  CHECK(ps_derive(a).order() == 7);
}

TEST_CASE("exact and numeric arithmetic agree") {
  Generator gen;
  for (int trial = 0; trial < 20; ++trial) {
    const PowerSeries a = gen.series(8), u = gen.series(8, true);
    auto num = [](const ExactScalar& x) { return to_complex(x); };
    const PowerSeries exact = ps_elementary(Elementary::Exp, a.without_constant()) * a / u;
    const PowerSeries numeric = ps_elementary(Elementary::Exp, a.to_numeric(num).without_constant()) *
                                a.to_numeric(num) / u.to_numeric(num);
    CHECK(series_equal(exact.to_numeric(num), numeric));
  }
}

TEST_CASE("mixing modes is an error") {
  const PowerSeries a = PowerSeries::variable(SeriesMode::Exact, 3);
  const PowerSeries b = PowerSeries::variable(SeriesMode::Numeric, 3);
  CHECK_THROWS(a + b);
}
