#include "adeq/expand.hpp"

#include <cmath>
#include <cstdio>

#include "adeq/errors.hpp"
#include "adeq/evaluate.hpp"

namespace adeq {

namespace {

GaussRational i_power(long k) {
  switch (((k % 4) + 4) % 4) {
    case 0:
      return 1;
    case 1:
      return GaussRational(0, 1);
    case 2:
      return -1;
    default:
      return GaussRational(0, -1);
  }
}

long mod4(const mpz_class& n) {
  mpz_class r = n % 4;
  if (r < 0) r += 4;
  return r.get_si();
}

const Monomial& pi_monomial() {
  static const Monomial m = Monomial::of(pi_symbol());
  return m;
}

ExactScalar adjoin(const std::string& fn, const ExactScalar& rest, bool allow) {
  const std::string key = fn + "(" + rest.to_string() + ")";
  if (!allow) throw ExpansionError(key + " requires adjoining a constant, which is disabled");
  return ExactScalar::symbol(constant_symbol(key));
}

std::string center_key(const PowerSeries& var) {
  if (var.mode() == SeriesMode::Exact) return var.exact().front().to_string();
  const std::complex<double> c = var.numeric().front();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g", c.real(), c.imag());
  return buf;
}

PowerSeries variable_at(const PowerSeries& center_source, std::size_t order) {
  PowerSeries h = PowerSeries::variable(center_source.mode(), order);
  if (center_source.mode() == SeriesMode::Exact)
    return h + PowerSeries::constant(center_source.exact().front(), order);
  return h + PowerSeries::constant(center_source.numeric().front(), order);
}

bool is_identity_shift(const PowerSeries& s) {
  if (s.order() == 0) return true;
  if (s.mode() == SeriesMode::Exact) {
    const auto& c = s.exact();
    if (!c[1].is_one()) return false;
    for (std::size_t k = 2; k < c.size(); ++k)
      if (!c[k].is_zero()) return false;
    return true;
  }
  const auto& c = s.numeric();
  if (c[1] != 1.0) return false;
  for (std::size_t k = 2; k < c.size(); ++k)
    if (c[k] != 0.0) return false;
  return true;
}

PowerSeries derive_times(PowerSeries s, unsigned k) {
  for (unsigned j = 0; j < k; ++j) s = ps_derive(s);
  return s;
}

void check_finite(const PowerSeries& s) {
  for (const auto& c : s.numeric())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ExpansionError("numeric overflow during expansion");
}

}  // namespace

ExactScalar exact_exp(const ExactScalar& u, bool allow_adjunction) {
  if (u.is_zero()) return 1;
  ExactScalar factor = 1;
  ExactScalar rest = u;
  if (u.is_polynomial()) {
    Poly p = u.numerator();
    if (auto it = p.terms().find(pi_monomial()); it != p.terms().end()) {
      const mpq_class b = it->second.im();
      const mpq_class twice = 2 * b;
      if (sgn(b) != 0 && twice.get_den() == 1) {
        factor = i_power(mod4(twice.get_num()));
        p -= Poly::term(GaussRational(0, b), pi_monomial());
      }
    }
    if (auto it = p.terms().find(Monomial()); it != p.terms().end()) {
      const mpq_class re = it->second.re();
      if (sgn(re) != 0 && re.get_den() == 1) {
        const long n = re.get_num().get_si();
        ExactScalar e = ExactScalar::symbol(constant_symbol("exp(1)")).pow(static_cast<unsigned>(std::labs(n)));
        factor *= n > 0 ? e : e.inverse();
        p -= Poly(GaussRational(re));
      }
    }
    rest = ExactScalar(p);
  }
  if (rest.is_zero()) return factor;
  return factor * adjoin("exp", rest, allow_adjunction);
}

std::pair<ExactScalar, ExactScalar> exact_sin_cos(const ExactScalar& u, bool allow_adjunction) {
  long quarter = 0;
  ExactScalar rest = u;
  if (u.is_polynomial()) {
    Poly p = u.numerator();
    if (auto it = p.terms().find(pi_monomial()); it != p.terms().end() && it->second.is_real()) {
      const mpq_class twice = 2 * it->second.re();
      if (twice.get_den() == 1) {
        quarter = mod4(twice.get_num());
        p -= Poly::term(it->second, pi_monomial());
      }
    }
    rest = ExactScalar(p);
  }
  ExactScalar s = 0;
  ExactScalar c = 1;
  if (!rest.is_zero()) {
    s = adjoin("sin", rest, allow_adjunction);
    c = adjoin("cos", rest, allow_adjunction);
  }
  // sin(x + k*pi/2), cos(x + k*pi/2)
  switch (quarter) {
    case 1:
      return {c, -s};
    case 2:
      return {-s, -c};
    case 3:
      return {-c, s};
    default:
      return {s, c};
  }
}

SeriesExpander::SeriesExpander(const DefinitionEnvironment& env, ExpansionOptions options)
    : env_(env), options_(options) {}

PowerSeries SeriesExpander::expand(const Expression& e, const ExactScalar& center, std::size_t order) {
  if (options_.mode == SeriesMode::Numeric) return expand_numeric(e, to_complex(center), order);
  return rec(e, variable_at(PowerSeries::constant(center, 0), order), order);
}

PowerSeries SeriesExpander::expand_numeric(const Expression& e, std::complex<double> center, std::size_t order) {
  if (options_.mode != SeriesMode::Numeric) throw ModeMismatch();
  PowerSeries s = rec(e, variable_at(PowerSeries::constant(center, 0), order), order);
  check_finite(s);
  return s;
}

PowerSeries SeriesExpander::expand_definition(const std::string& name, const PowerSeries& at, std::size_t order) {
  auto key = std::make_pair(name, center_key(at));
  if (auto it = cache_.find(key); it != cache_.end() && it->second.order() >= order)
    return it->second.truncated(order);
  PowerSeries s = rec(env_.lookup(name), variable_at(at, order), order);
  cache_.insert_or_assign(key, s);
  return s;
}

PowerSeries SeriesExpander::compose_at(const std::string& name, unsigned k, const PowerSeries& inner) {
  const std::size_t n = inner.order();
  PowerSeries outer = derive_times(expand_definition(name, inner, n + k), k);
  if (is_identity_shift(inner)) return outer;
  return ps_compose(outer, inner.without_constant(), options_.tolerance);
}

PowerSeries SeriesExpander::elementary(NodeKind kind, const PowerSeries& a) {
  const PowerSeries r = a.without_constant();
  const NumericTolerance& tol = options_.tolerance;
  if (a.mode() == SeriesMode::Exact) {
    const ExactScalar& u0 = a.exact().front();
    if (kind == NodeKind::Exp) return scale(ps_elementary(Elementary::Exp, r, tol), exact_exp(u0, options_.allow_adjunction));
    const auto [s, c] = exact_sin_cos(u0, options_.allow_adjunction);
    const PowerSeries sr = ps_elementary(Elementary::Sin, r, tol);
    const PowerSeries cr = ps_elementary(Elementary::Cos, r, tol);
    if (kind == NodeKind::Sin) return scale(cr, s) + scale(sr, c);
    return scale(cr, c) - scale(sr, s);
  }
  const std::complex<double> u0 = a.numeric().front();
  if (kind == NodeKind::Exp) {
    if (u0.real() > 709.0) throw ExpansionError("numeric overflow in exp");
    return scale(ps_elementary(Elementary::Exp, r, tol), std::exp(u0));
  }
  const PowerSeries sr = ps_elementary(Elementary::Sin, r, tol);
  const PowerSeries cr = ps_elementary(Elementary::Cos, r, tol);
  if (kind == NodeKind::Sin) return scale(cr, std::sin(u0)) + scale(sr, std::cos(u0));
  return scale(cr, std::cos(u0)) - scale(sr, std::sin(u0));
}

PowerSeries SeriesExpander::rec(const Expression& e, const PowerSeries& var, std::size_t order) {
  const bool exact = var.mode() == SeriesMode::Exact;
  auto constant = [&](const ExactScalar& c) {
    return exact ? PowerSeries::constant(c, order) : PowerSeries::constant(to_complex(c), order);
  };
  switch (e.kind()) {
    case NodeKind::Var:
      return var;
    case NodeKind::Lit:
      return constant(GaussRational(e.literal()));
    case NodeKind::ImagUnit:
      return constant(GaussRational(0, 1));
    case NodeKind::Pi:
      return constant(ExactScalar::symbol(pi_symbol()));
    case NodeKind::Neg:
      return -rec(e.arg(0), var, order);
    case NodeKind::Add:
      return rec(e.arg(0), var, order) + rec(e.arg(1), var, order);
    case NodeKind::Sub:
      return rec(e.arg(0), var, order) - rec(e.arg(1), var, order);
    case NodeKind::Mul:
      return rec(e.arg(0), var, order) * rec(e.arg(1), var, order);
    case NodeKind::Div:
      return ps_arithmetic(rec(e.arg(0), var, order), rec(e.arg(1), var, order), BinaryOp::Div, options_.tolerance);
    case NodeKind::Pow:
      return ps_pow(rec(e.arg(0), var, order), e.count());
    case NodeKind::Exp:
    case NodeKind::Sin:
    case NodeKind::Cos:
      return elementary(e.kind(), rec(e.arg(0), var, order));
    case NodeKind::Ref:
      return compose_at(e.name(), e.count(), var);
    case NodeKind::Compose:
      return compose_at(e.name(), e.count(), rec(e.arg(0), var, order));
    case NodeKind::Iterate: {
      PowerSeries w = var;
      for (unsigned k = 0; k < e.count(); ++k) w = compose_at(e.name(), 0, w);
      return w;
    }
  }
  return PowerSeries::zero(var.mode(), order);
}

PowerSeries expand_series(const Expression& e, const ExactScalar& center, std::size_t order,
                          const DefinitionEnvironment& env, const ExpansionOptions& options) {
  return SeriesExpander(env, options).expand(e, center, order);
}

}  // namespace adeq
