#include "adeq/chain_rewrite.hpp"

#include <functional>
#include <mutex>
#include <tuple>

#include "adeq/errors.hpp"
#include "adeq/expand.hpp"

namespace adeq {

namespace {

const Symbol* jet(const std::string& fn, unsigned k) { return jet_symbol(fn, k); }

// d/dz on jet fractions: f^(k) -> f^(k+1), z -> 1, constants -> 0.
JetFraction total_derivative(const JetFraction& x) {
  JetFraction r;
  for (const Symbol* s : x.symbols()) {
    if (s->kind == SymbolKind::Constant) continue;
    JetFraction partial = x.derivative(s);
    if (partial.is_zero()) continue;
    if (s->kind == SymbolKind::Variable) {
      r += partial;
    } else {
      r += partial * JetFraction::symbol(jet(s->function, s->order + 1));
    }
  }
  return r;
}

void add_to(GPolynomial& p, const DiffMonomial& m, const JetFraction& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

GPolynomial multiply(const GPolynomial& a, const GPolynomial& b) {
  GPolynomial r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_to(r, ma * mb, ca * cb);
  return r;
}

// G_j = g^(j)(f) differentiates to G_{j+1} * f'.
GPolynomial derive(const GPolynomial& p, const std::string& f_name) {
  const JetFraction f1 = JetFraction::symbol(jet(f_name, 1));
  GPolynomial r;
  for (const auto& [m, c] : p) {
    add_to(r, m, total_derivative(c));
    const auto& e = m.exponents();
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      std::vector<unsigned> shifted = e;
      shifted.resize(std::max(shifted.size(), j + 2), 0);
      shifted[j] -= 1;
      shifted[j + 1] += 1;
      add_to(r, DiffMonomial(shifted), c * f1 * JetFraction(static_cast<long>(e[j])));
    }
  }
  return r;
}

GPolynomial rational_transfer(unsigned k, const std::string& f_name, const std::string& g_name) {
  static std::mutex mutex;
  static std::map<std::tuple<unsigned, std::string, std::string>, GPolynomial> cache;
  const auto key = std::make_tuple(k, f_name, g_name);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  GPolynomial t;
  if (k == 0) {
    t.emplace(DiffMonomial::variable(0), JetFraction(1));
  } else {
    const JetFraction inv_g1 = JetFraction::symbol(jet(g_name, 1)).inverse();
    for (auto& [m, c] : derive(rational_transfer(k - 1, f_name, g_name), f_name)) add_to(t, m, c * inv_g1);
  }
  std::lock_guard lock(mutex);
  cache.emplace(key, t);
  return t;
}

TransferExpression to_expression(const GPolynomial& p, const std::string& f_name, const std::string& g_name) {
  TransferExpression t;
  t.f_name = f_name;
  t.g_name = g_name;
  for (const auto& [m, c] : p) t.terms.push_back({m, from_rational(c), c});
  return t;
}

Expression gauss_expression(const GaussRational& c) {
  Expression re = Expression::lit(c.re());
  if (c.is_real()) return re;
  Expression im = build::mul(Expression::lit(c.im()), Expression::imag_unit());
  return build::add(re, im);
}

Expression symbol_expression(const Symbol* s) {
  switch (s->kind) {
    case SymbolKind::Variable:
      return Expression::var();
    case SymbolKind::Jet:
      return Expression::ref(s->function, s->order);
    case SymbolKind::Constant:
      return s->key == "pi" ? Expression::pi() : parse_expression(s->key);
  }
  return {};
}

Expression poly_expression(const Poly& p) {
  // Positive terms first so that sums read "a-b" rather than "-b+a".
  std::vector<std::pair<const Monomial*, GaussRational>> terms;
  for (const auto& [m, c] : p.terms())
    if (!c.is_negative()) terms.emplace_back(&m, c);
  for (const auto& [m, c] : p.terms())
    if (c.is_negative()) terms.emplace_back(&m, c);
  Expression acc;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool neg = c.is_negative();
    Expression term = gauss_expression(neg ? -c : c);
    for (const auto& [s, e] : m->factors()) term = build::mul(term, build::pow(symbol_expression(s), e));
    if (first) {
      acc = neg ? build::neg(term) : term;
    } else {
      acc = neg ? build::sub(acc, term) : build::add(acc, term);
    }
    first = false;
  }
  return acc;
}

unsigned max_jet_order(const JetFraction& x) {
  unsigned k = 0;
  for (const Symbol* s : x.symbols())
    if (s->kind == SymbolKind::Jet) k = std::max(k, s->order);
  return k;
}

PowerSeries derive_times(PowerSeries s, unsigned k) {
  for (unsigned j = 0; j < k; ++j) s = ps_derive(s);
  return s;
}

// Value of a jet fraction with every symbol replaced by a series.
class FractionEvaluator {
 public:
  FractionEvaluator(std::size_t order, std::function<PowerSeries(const Symbol*)> value)
      : order_(order), value_(std::move(value)) {}

  PowerSeries operator()(const JetFraction& x) {
    PowerSeries num = poly(x.numerator());
    if (x.is_polynomial()) return num;
    PowerSeries den = poly(x.denominator());
    if (den.exact().front().is_zero()) throw DomainError("transfer coefficient has a pole at the verification center");
    return num / den;
  }

 private:
  PowerSeries poly(const Poly& p) {
    PowerSeries acc = PowerSeries::zero(SeriesMode::Exact, order_);
    for (const auto& [m, c] : p.terms()) {
      PowerSeries t = PowerSeries::constant(ExactScalar(c), order_);
      for (const auto& [s, e] : m.factors()) t = t * power(s, e);
      acc = acc + t;
    }
    return acc;
  }

  const PowerSeries& power(const Symbol* s, unsigned e) {
    auto key = std::make_pair(s, e);
    if (auto it = powers_.find(key); it != powers_.end()) return it->second;
    PowerSeries v = e == 1 ? value_(s) : power(s, e - 1) * power(s, 1);
    return powers_.emplace(key, std::move(v)).first->second;
  }

  std::size_t order_;
  std::function<PowerSeries(const Symbol*)> value_;
  std::map<std::pair<const Symbol*, unsigned>, PowerSeries> powers_;
};

}  // namespace

std::vector<DiffMonomial> TransferExpression::support() const {
  std::vector<DiffMonomial> out;
  for (const Term& t : terms) out.push_back(t.g_monomial);
  return out;
}

std::string TransferExpression::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const Term& t : terms) {
    std::string g;
    const auto& e = t.g_monomial.exponents();
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!g.empty()) g += '*';
      g += 'G' + std::to_string(j);
      if (e[j] > 1) g += '^' + std::to_string(e[j]);
    }
    Expression coef = t.coefficient;
    bool neg = false;
    if (coef.kind() == NodeKind::Neg) {
      coef = coef.arg(0);
      neg = true;
    } else if (coef.kind() == NodeKind::Lit && sgn(coef.literal()) < 0) {
      coef = Expression::lit(mpq_class(-coef.literal()));
      neg = true;
    } else if (coef.kind() == NodeKind::Div && coef.arg(0).kind() == NodeKind::Neg) {
      coef = Expression::div(coef.arg(0).arg(0), coef.arg(1));
      neg = true;
    }
    std::string piece;
    if (g.empty()) {
      piece = coef.to_string();
    } else if (coef.is_one()) {
      piece = g;
    } else {
      const bool atomic = coef.kind() == NodeKind::Ref || (coef.kind() == NodeKind::Lit && coef.literal().get_den() == 1);
      piece = g + (atomic ? "*" + coef.to_string() : "*(" + coef.to_string() + ")");
    }
    if (out.empty()) {
      out = neg ? "-" + piece : piece;
    } else {
      out += neg ? " - " : " + ";
      out += piece;
    }
  }
  return out;
}

TransferExpression derivative_transfer(unsigned k, const std::string& f_name, const std::string& g_name) {
  return to_expression(rational_transfer(k, f_name, g_name), f_name, g_name);
}

TransferExpression transfer_diffpoly(const DiffPolynomial& p, const std::string& f_name, const std::string& g_name) {
  if (p.is_zero()) throw DomainError("cannot transfer the zero differential polynomial");
  const JetFraction g0 = JetFraction::symbol(jet(g_name, 0));
  GPolynomial total;
  for (const auto& [m, a] : p.terms()) {
    GPolynomial term;
    term.emplace(DiffMonomial(), a.substitute(variable_symbol(), g0));
    const auto& e = m.exponents();
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      const GPolynomial tk = rational_transfer(static_cast<unsigned>(k), f_name, g_name);
      for (unsigned r = 0; r < e[k]; ++r) term = multiply(term, tk);
    }
    for (const auto& [gm, c] : term) add_to(total, gm, c);
  }
  return to_expression(total, f_name, g_name);
}

unsigned max_weight(const TransferExpression& t) {
  if (t.is_zero()) throw DomainError("max_weight of the zero transfer expression is undefined");
  unsigned w = 0;
  for (const auto& term : t.terms) w = std::max(w, term.g_monomial.weight());
  return w;
}

TransferCheck check_transfer(const TransferExpression& t, const DiffPolynomial& p, const Expression& f,
                             const Expression& g, std::size_t order, const DefinitionEnvironment& env,
                             const ExactScalar& center) {
  unsigned depth = p.order();
  unsigned g_depth = 0;
  for (const auto& term : t.terms) {
    depth = std::max(depth, max_jet_order(term.rational));
    g_depth = std::max(g_depth, term.g_monomial.order());
  }
  SeriesExpander ex(env);
  const std::size_t n = order;
  const PowerSeries fs = ex.expand(f, center, n + depth + 1);
  const PowerSeries gs = ex.expand(g, center, n + depth + 1);

  // P[f] about g(center), then composed with g.
  const ExactScalar g_center = gs.exact().front();
  const PowerSeries pf = apply(p, ex.expand(f, g_center, n + p.order()), g_center, n);
  const PowerSeries lhs = ps_compose(pf, gs.truncated(n).without_constant());

  // M_m[g] about f(center), composed with f.
  const ExactScalar f_center = fs.exact().front();
  const PowerSeries g_at_f = ex.expand(g, f_center, n + g_depth);
  const PowerSeries f_shift = fs.truncated(n).without_constant();
  std::vector<PowerSeries> G;
  for (unsigned j = 0; j <= g_depth; ++j)
    G.push_back(ps_compose(derive_times(g_at_f, j).truncated(n), f_shift));

  const PowerSeries var = PowerSeries::variable(SeriesMode::Exact, n) + PowerSeries::constant(center, n);
  FractionEvaluator eval(n, [&](const Symbol* s) -> PowerSeries {
    if (s->kind == SymbolKind::Variable) return var;
    if (s->kind == SymbolKind::Constant) return PowerSeries::constant(ExactScalar::symbol(s), n);
    if (s->function == t.f_name) return derive_times(fs, s->order).truncated(n);
    if (s->function == t.g_name) return derive_times(gs, s->order).truncated(n);
    throw DomainError("transfer coefficient mentions unknown function '" + s->function + "'");
  });

  TransferCheck result;
  result.center = center;
  PowerSeries rhs = PowerSeries::zero(SeriesMode::Exact, n);
  for (const auto& term : t.terms) {
    PowerSeries b = eval(term.rational);
    if (!b.is_zero()) result.nonvanishing_weight = std::max(result.nonvanishing_weight, term.g_monomial.weight());
    const auto& e = term.g_monomial.exponents();
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j] > 0) b = b * ps_pow(G[j], e[j]);
    rhs = rhs + b;
  }
  result.holds = (lhs - rhs).is_zero();
  return result;
}

bool verify_transfer(const TransferExpression& t, const DiffPolynomial& p, const Expression& f, const Expression& g,
                     std::size_t order, const DefinitionEnvironment& env, const ExactScalar& center) {
  return check_transfer(t, p, f, g, order, env, center).holds;
}

ExactScalar transfer_center(const Expression& g, const DefinitionEnvironment& env) {
  const ExactScalar candidates[] = {0, 1, -1, 2, -2, ExactScalar::rational(1, 2), 3};
  SeriesExpander ex(env);
  for (const ExactScalar& c : candidates) {
    try {
      if (!ex.expand(g, c, 1).exact()[1].is_zero()) return c;
    } catch (const DomainError&) {
    }
  }
  return 0;
}

Expression from_rational(const JetFraction& x) {
  Expression num = poly_expression(x.numerator());
  if (x.is_polynomial()) return num;
  return build::div(num, poly_expression(x.denominator()));
}

JetFraction to_rational(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Var:
      return JetFraction::symbol(variable_symbol());
    case NodeKind::Lit:
      return GaussRational(e.literal());
    case NodeKind::ImagUnit:
      return GaussRational(0, 1);
    case NodeKind::Pi:
      return JetFraction::symbol(pi_symbol());
    case NodeKind::Neg:
      return -to_rational(e.arg(0));
    case NodeKind::Add:
      return to_rational(e.arg(0)) + to_rational(e.arg(1));
    case NodeKind::Sub:
      return to_rational(e.arg(0)) - to_rational(e.arg(1));
    case NodeKind::Mul:
      return to_rational(e.arg(0)) * to_rational(e.arg(1));
    case NodeKind::Div: {
      JetFraction d = to_rational(e.arg(1));
      if (d.is_zero()) throw DomainError("division by zero");
      return to_rational(e.arg(0)) / d;
    }
    case NodeKind::Pow:
      return to_rational(e.arg(0)).pow(e.count());
    case NodeKind::Exp:
    case NodeKind::Sin:
    case NodeKind::Cos: {
      if (!e.arg(0).is_constant()) throw DomainError("exp/sin/cos of a nonconstant argument is not a jet fraction");
      JetFraction u = to_rational(e.arg(0));
      if (e.kind() == NodeKind::Exp) return exact_exp(u);
      auto [s, c] = exact_sin_cos(u);
      return e.kind() == NodeKind::Sin ? s : c;
    }
    case NodeKind::Ref:
      return JetFraction::symbol(jet(e.name(), e.count()));
    case NodeKind::Compose:
      if (e.arg(0).kind() == NodeKind::Var) return JetFraction::symbol(jet(e.name(), e.count()));
      throw DomainError("compositions are not jet fractions");
    case NodeKind::Iterate:
      throw DomainError("iterates are not jet fractions");
  }
  return {};
}

}  // namespace adeq
