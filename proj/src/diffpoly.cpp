#include "adeq/diffpoly.hpp"

#include <algorithm>
#include <cctype>

#include "adeq/errors.hpp"
#include "adeq/evaluate.hpp"

namespace adeq {

DiffMonomial::DiffMonomial(std::vector<unsigned> exponents) : m_(std::move(exponents)) {
  while (!m_.empty() && m_.back() == 0) m_.pop_back();
}

DiffMonomial DiffMonomial::variable(unsigned k) {
  std::vector<unsigned> m(k + 1, 0);
  m[k] = 1;
  return DiffMonomial(std::move(m));
}

unsigned DiffMonomial::weight() const {
  unsigned w = 0;
  for (std::size_t k = 0; k < m_.size(); ++k) w += static_cast<unsigned>(k) * m_[k];
  return w;
}

unsigned DiffMonomial::degree() const {
  unsigned d = 0;
  for (unsigned e : m_) d += e;
  return d;
}

DiffMonomial DiffMonomial::operator*(const DiffMonomial& o) const {
  std::vector<unsigned> r(std::max(m_.size(), o.m_.size()), 0);
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = exponent(k) + o.exponent(k);
  return DiffMonomial(std::move(r));
}

std::string DiffMonomial::to_string() const {
  if (m_.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < m_.size(); ++k) {
    if (m_[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'y' + std::to_string(k);
    if (m_[k] > 1) out += '^' + std::to_string(m_[k]);
  }
  return out;
}

int compare(const DiffMonomial& a, const DiffMonomial& b) {
  if (a.weight() != b.weight()) return a.weight() < b.weight() ? -1 : 1;
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  const std::size_t n = std::max(a.exponents().size(), b.exponents().size());
  for (std::size_t k = 0; k < n; ++k)
    if (a.exponent(k) != b.exponent(k)) return a.exponent(k) < b.exponent(k) ? -1 : 1;
  return 0;
}

ExactScalar z_scalar() { return ExactScalar::symbol(variable_symbol()); }

unsigned coefficient_degree(const RationalCoefficient& c) {
  return std::max(c.numerator().degree_in(variable_symbol()), c.denominator().degree_in(variable_symbol()));
}

unsigned weight(const DiffMonomial& m) { return m.weight(); }
unsigned weight(const DiffPolynomial& p) { return p.weight(); }

DiffPolynomial DiffPolynomial::term(const RationalCoefficient& c, const DiffMonomial& m) {
  DiffPolynomial p;
  p.add_term(m, c);
  return p;
}

void DiffPolynomial::add_term(const DiffMonomial& m, const RationalCoefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

const DiffMonomial& DiffPolynomial::leading_monomial() const {
  if (terms_.empty()) throw DomainError("zero differential polynomial has no leading monomial");
  return terms_.begin()->first;
}

const RationalCoefficient& DiffPolynomial::coefficient(const DiffMonomial& m) const {
  static const RationalCoefficient zero;
  auto it = terms_.find(m);
  return it == terms_.end() ? zero : it->second;
}

std::vector<DiffMonomial> DiffPolynomial::support() const {
  std::vector<DiffMonomial> out;
  for (const auto& kv : terms_) out.push_back(kv.first);
  return out;
}

unsigned DiffPolynomial::weight() const {
  if (terms_.empty()) throw DomainError("weight of the zero differential polynomial is undefined");
  unsigned w = 0;
  for (const auto& kv : terms_) w = std::max(w, kv.first.weight());
  return w;
}

unsigned DiffPolynomial::order() const {
  unsigned n = 0;
  for (const auto& kv : terms_) n = std::max(n, kv.first.order());
  return n;
}

unsigned DiffPolynomial::max_coefficient_degree() const {
  unsigned d = 0;
  for (const auto& kv : terms_) d = std::max(d, coefficient_degree(kv.second));
  return d;
}

DiffPolynomial DiffPolynomial::operator-() const {
  DiffPolynomial r = *this;
  for (auto& kv : r.terms_) kv.second = -kv.second;
  return r;
}

DiffPolynomial& DiffPolynomial::operator+=(const DiffPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPolynomial& DiffPolynomial::operator-=(const DiffPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
  DiffPolynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

DiffPolynomial operator*(const RationalCoefficient& c, const DiffPolynomial& p) {
  DiffPolynomial r;
  for (const auto& [m, a] : p.terms_) r.add_term(m, c * a);
  return r;
}

namespace {

bool single_term(const RationalCoefficient& c) { return c.is_polynomial() && c.numerator().size() == 1; }

bool negative(const RationalCoefficient& c) {
  return c.numerator().size() == 1 && c.numerator().leading_coefficient().is_negative();
}

std::string coefficient_factor(const RationalCoefficient& c) {
  std::string s = c.to_string();
  if (single_term(c) && c.numerator().leading_coefficient().prints_atomic()) return s;
  return "(" + s + ")";
}

}  // namespace

std::string DiffPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c0] : terms_) {
    const bool neg = negative(c0);
    const RationalCoefficient c = neg ? -c0 : c0;
    std::string body;
    if (m.is_one()) {
      body = single_term(c) ? c.to_string() : "(" + c.to_string() + ")";
    } else if (c.is_one()) {
      body = m.to_string();
    } else {
      body = coefficient_factor(c) + "*" + m.to_string();
    }
    if (first) {
      out = neg ? "-" + body : body;
    } else {
      out += neg ? " - " : " + ";
      out += body;
    }
    first = false;
  }
  return out;
}

DiffPolynomial normalize(const DiffPolynomial& p) {
  if (p.is_zero()) throw DomainError("cannot normalize the zero differential polynomial");
  Poly lcm = 1;
  for (const auto& kv : p.terms()) {
    const Poly& d = kv.second.denominator();
    if (d.is_one()) continue;
    lcm = *divide_exact(lcm * d, gcd(lcm, d));
  }
  std::vector<std::pair<DiffMonomial, Poly>> nums;
  Poly content;
  for (const auto& [m, c] : p.terms()) {
    Poly n = c.numerator() * *divide_exact(lcm, c.denominator());
    content = content.is_zero() ? n.monic() : gcd(content, n);
    nums.emplace_back(m, std::move(n));
  }
  const GaussRational lead = divide_exact(nums.front().second, content)->leading_coefficient();
  for (auto& [m, n] : nums) {
    n = *divide_exact(n, content);
    n *= GaussRational(1) / lead;
  }
  // Scale to primitive Gaussian-integer coefficients; the leading one stays a
  // positive integer.
  auto each_part = [&](auto&& fn) {
    for (const auto& kv : nums)
      for (const auto& t : kv.second.terms())
        for (const mpq_class* x : {&t.second.re(), &t.second.im()})
          if (sgn(*x) != 0) fn(*x);
  };
  mpz_class den = 1, num = 0;
  each_part([&](const mpq_class& x) { mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t()); });
  each_part([&](const mpq_class& x) {
    const mpz_class v = x.get_num() * (den / x.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
  });
  mpq_class ratio(den, num);
  ratio.canonicalize();
  const GaussRational factor(ratio);
  DiffPolynomial r;
  for (auto& [m, n] : nums) {
    n *= factor;
    r += DiffPolynomial::term(ExactScalar(std::move(n)), m);
  }
  return r;
}

// ------------------------------------------------------------------ parsing

namespace {

bool is_y_name(std::string_view s) { return s.size() == 2 && s[0] == 'y' && std::isdigit(static_cast<unsigned char>(s[1])); }

RationalCoefficient scalar_of(const DiffPolynomial& p, const char* what) {
  if (p.is_zero()) return {};
  if (p.size() != 1 || !p.leading_monomial().is_one())
    throw DomainError(std::string(what) + " must not contain y variables");
  return p.coefficient({});
}

DiffPolynomial convert(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Var:
      return DiffPolynomial::constant(z_scalar());
    case NodeKind::Lit:
      return DiffPolynomial::constant(GaussRational(e.literal()));
    case NodeKind::ImagUnit:
      return DiffPolynomial::constant(GaussRational(0, 1));
    case NodeKind::Pi:
      return DiffPolynomial::constant(ExactScalar::symbol(pi_symbol()));
    case NodeKind::Neg:
      return -convert(e.arg(0));
    case NodeKind::Add:
      return convert(e.arg(0)) + convert(e.arg(1));
    case NodeKind::Sub:
      return convert(e.arg(0)) - convert(e.arg(1));
    case NodeKind::Mul:
      return convert(e.arg(0)) * convert(e.arg(1));
    case NodeKind::Div: {
      RationalCoefficient d = scalar_of(convert(e.arg(1)), "a divisor");
      if (d.is_zero()) throw DomainError("division by zero in differential polynomial");
      return d.inverse() * convert(e.arg(0));
    }
    case NodeKind::Pow: {
      DiffPolynomial base = convert(e.arg(0));
      DiffPolynomial r = DiffPolynomial::constant(1);
      for (unsigned k = 0; k < e.count(); ++k) r = r * base;
      return r;
    }
    case NodeKind::Exp:
    case NodeKind::Sin:
    case NodeKind::Cos: {
      RationalCoefficient u = scalar_of(convert(e.arg(0)), "an exp/sin/cos argument");
      if (u.contains(variable_symbol()))
        throw DomainError("exp/sin/cos of z is not allowed in differential-polynomial coefficients");
      if (e.kind() == NodeKind::Exp) return DiffPolynomial::constant(exact_exp(u));
      auto [s, c] = exact_sin_cos(u);
      return DiffPolynomial::constant(e.kind() == NodeKind::Sin ? s : c);
    }
    case NodeKind::Ref:
      if (e.count() != 0) throw DomainError("write derivatives as y" + std::to_string(e.count()) + ", not with primes");
      return DiffPolynomial::term(1, DiffMonomial::variable(static_cast<unsigned>(e.name()[1] - '0')));
    case NodeKind::Compose:
    case NodeKind::Iterate:
      throw DomainError("y variables cannot be composed or iterated");
  }
  return {};
}

}  // namespace

DiffPolynomial parse_diffpoly(std::string_view text) {
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] != 'y') continue;
    if (k > 0 && (std::isalnum(static_cast<unsigned char>(text[k - 1])) || text[k - 1] == '_')) continue;
    std::size_t j = k + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j < text.size() && text[j] == '-') {
      std::size_t d = j + 1;
      while (d < text.size() && std::isspace(static_cast<unsigned char>(text[d]))) ++d;
      if (d < text.size() && std::isdigit(static_cast<unsigned char>(text[d])))
        throw ParseError("negative derivative index", j);
    }
  }
  ParseOptions options;
  options.extra_names = is_y_name;
  return convert(parse_expression(text, options));
}

// ---------------------------------------------------------------- applying

PowerSeries coefficient_series(const RationalCoefficient& a, const PowerSeries& var) {
  const std::size_t order = var.order();
  auto poly_series = [&](const Poly& p) {
    const std::vector<Poly> cs = p.coefficients_in(variable_symbol());
    PowerSeries acc = PowerSeries::zero(var.mode(), order);
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
      const ExactScalar c(*it);
      acc = acc * var + (var.mode() == SeriesMode::Exact ? PowerSeries::constant(c, order)
                                                         : PowerSeries::constant(to_complex(c), order));
    }
    return acc;
  };
  if (a.is_polynomial()) return poly_series(a.numerator());
  PowerSeries den = poly_series(a.denominator());
  const bool pole = den.mode() == SeriesMode::Exact ? den.exact().front().is_zero() : std::abs(den.numeric().front()) == 0.0;
  if (pole) throw DomainError("coefficient " + a.to_string() + " has a pole at the expansion center");
  return poly_series(a.numerator()) / den;
}

PowerSeries apply(const DiffPolynomial& p, const PowerSeries& f, const ExactScalar& center, std::size_t order) {
  const unsigned n = p.order();
  if (f.order() < order + n) throw DomainError("series order too small to apply the differential polynomial");
  std::vector<PowerSeries> derivs;
  PowerSeries d = f.truncated(order + n);
  for (unsigned k = 0; k <= n; ++k) {
    derivs.push_back(d.truncated(order));
    if (k < n) d = ps_derive(d);
  }
  PowerSeries var = PowerSeries::variable(f.mode(), order);
  var = var + (f.mode() == SeriesMode::Exact ? PowerSeries::constant(center, order)
                                             : PowerSeries::constant(to_complex(center), order));
  PowerSeries total = PowerSeries::zero(f.mode(), order);
  for (const auto& [m, c] : p.terms()) {
    PowerSeries t = coefficient_series(c, var);
    for (std::size_t k = 0; k < m.exponents().size(); ++k)
      if (m.exponents()[k] > 0) t = t * ps_pow(derivs[k], m.exponents()[k]);
    total = total + t;
  }
  return total;
}

PowerSeries apply(const DiffPolynomial& p, const Expression& f, const ExactScalar& center, std::size_t order,
                  const DefinitionEnvironment& env, const ExpansionOptions& options) {
  SeriesExpander expander(env, options);
  return apply(p, expander.expand(f, center, order + p.order()), center, order);
}

}  // namespace adeq
