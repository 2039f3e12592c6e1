#include "adeq/evaluate.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "adeq/errors.hpp"

namespace adeq {

using Complex = std::complex<double>;

double LogComplex::log_abs() const {
  return zero ? -std::numeric_limits<double>::infinity() : log.real();
}

namespace {

constexpr double kMaxLog = 709.0;

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

Complex lit_value(const mpq_class& q) { return {q.get_d(), 0.0}; }

// Derivatives of definitions are computed once per evaluator.
class DerivativeTable {
 public:
  explicit DerivativeTable(const DefinitionEnvironment& env) : env_(env) {}

  const Expression& get(const std::string& name, unsigned k) {
    auto key = std::make_pair(name, k);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
    Expression d = k == 0 ? env_.lookup(name) : differentiate(get(name, k - 1));
    return table_.emplace(key, d).first->second;
  }

  const DefinitionEnvironment& env() const { return env_; }

 private:
  const DefinitionEnvironment& env_;
  std::map<std::pair<std::string, unsigned>, Expression> table_;
};

struct Overflow {};

class PlainEval {
 public:
  explicit PlainEval(const DefinitionEnvironment& env) : table_(env) {}

  Complex eval(const Expression& e, Complex z) {
    Complex r = step(e, z);
    if (!finite(r)) throw Overflow{};
    return r;
  }

 private:
  Complex step(const Expression& e, Complex z) {
    switch (e.kind()) {
      case NodeKind::Var:
        return z;
      case NodeKind::Lit:
        return lit_value(e.literal());
      case NodeKind::ImagUnit:
        return {0.0, 1.0};
      case NodeKind::Pi:
        return std::numbers::pi;
      case NodeKind::Neg:
        return -eval(e.arg(0), z);
      case NodeKind::Add:
        return eval(e.arg(0), z) + eval(e.arg(1), z);
      case NodeKind::Sub:
        return eval(e.arg(0), z) - eval(e.arg(1), z);
      case NodeKind::Mul:
        return eval(e.arg(0), z) * eval(e.arg(1), z);
      case NodeKind::Div: {
        Complex d = eval(e.arg(1), z);
        if (d == 0.0) throw Overflow{};
        return eval(e.arg(0), z) / d;
      }
      case NodeKind::Pow: {
        Complex b = eval(e.arg(0), z);
        Complex r = 1.0;
        for (unsigned k = 0; k < e.count(); ++k) r *= b;
        return r;
      }
      case NodeKind::Exp: {
        Complex u = eval(e.arg(0), z);
        if (u.real() > kMaxLog) throw Overflow{};
        return std::exp(u);
      }
      case NodeKind::Sin:
        return std::sin(eval(e.arg(0), z));
      case NodeKind::Cos:
        return std::cos(eval(e.arg(0), z));
      case NodeKind::Ref:
        return eval(table_.get(e.name(), e.count()), z);
      case NodeKind::Compose:
        return eval(table_.get(e.name(), e.count()), eval(e.arg(0), z));
      case NodeKind::Iterate: {
        Complex w = z;
        const Expression& f = table_.get(e.name(), 0);
        for (unsigned k = 0; k < e.count(); ++k) w = eval(f, w);
        return w;
      }
    }
    return 0.0;
  }

  DerivativeTable table_;
};

class LogEval {
 public:
  explicit LogEval(const DefinitionEnvironment& env) : table_(env) {}

  LogComplex eval(const Expression& e, Complex z) {
    switch (e.kind()) {
      case NodeKind::Var:
        return of(z);
      case NodeKind::Lit:
        return of(lit_value(e.literal()));
      case NodeKind::ImagUnit:
        return of({0.0, 1.0});
      case NodeKind::Pi:
        return of(std::numbers::pi);
      case NodeKind::Neg: {
        LogComplex a = eval(e.arg(0), z);
        if (!a.zero) a.log += Complex(0.0, std::numbers::pi);
        return a;
      }
      case NodeKind::Add:
        return sum(eval(e.arg(0), z), eval(e.arg(1), z));
      case NodeKind::Sub: {
        LogComplex b = eval(e.arg(1), z);
        if (!b.zero) b.log += Complex(0.0, std::numbers::pi);
        return sum(eval(e.arg(0), z), b);
      }
      case NodeKind::Mul: {
        LogComplex a = eval(e.arg(0), z);
        LogComplex b = eval(e.arg(1), z);
        if (a.zero || b.zero) return {true, {}};
        return {false, reduce(a.log + b.log)};
      }
      case NodeKind::Div: {
        LogComplex a = eval(e.arg(0), z);
        LogComplex b = eval(e.arg(1), z);
        if (b.zero) throw Overflow{};
        if (a.zero) return a;
        return {false, reduce(a.log - b.log)};
      }
      case NodeKind::Pow: {
        LogComplex a = eval(e.arg(0), z);
        if (e.count() == 0) return of(1.0);
        if (a.zero) return a;
        return {false, reduce(static_cast<double>(e.count()) * a.log)};
      }
      case NodeKind::Exp:
        return {false, reduce(plain(eval(e.arg(0), z)))};
      case NodeKind::Sin:
      case NodeKind::Cos:
        return trig(e.kind() == NodeKind::Sin, plain(eval(e.arg(0), z)));
      case NodeKind::Ref:
        return eval(table_.get(e.name(), e.count()), z);
      case NodeKind::Compose:
        return eval(table_.get(e.name(), e.count()), plain(eval(e.arg(0), z)));
      case NodeKind::Iterate: {
        const Expression& f = table_.get(e.name(), 0);
        LogComplex w = eval(f, z);
        for (unsigned k = 1; k < e.count(); ++k) w = eval(f, plain(w));
        return w;
      }
    }
    return {true, {}};
  }

 private:
  static Complex reduce(Complex l) {
    if (!finite(l)) throw Overflow{};
    return {l.real(), std::remainder(l.imag(), 2.0 * std::numbers::pi)};
  }

  static LogComplex of(Complex c) {
    if (c == 0.0) return {true, {}};
    return {false, std::log(c)};
  }

  static Complex plain(const LogComplex& a) {
    if (a.zero) return 0.0;
    if (a.log.real() > kMaxLog) throw Overflow{};
    return std::exp(a.log);
  }

  static LogComplex sum(const LogComplex& a, const LogComplex& b) {
    if (a.zero) return b;
    if (b.zero) return a;
    const LogComplex& hi = a.log.real() >= b.log.real() ? a : b;
    const LogComplex& lo = a.log.real() >= b.log.real() ? b : a;
    Complex s = 1.0 + std::exp(lo.log - hi.log);
    if (s == 0.0) return {true, {}};
    return {false, reduce(hi.log + std::log(s))};
  }

  // For |Im u| large, sin u and cos u are dominated by one exponential.
  static LogComplex trig(bool is_sin, Complex u) {
    const Complex I(0.0, 1.0);
    if (std::abs(u.imag()) < 600.0) return of(is_sin ? std::sin(u) : std::cos(u));
    if (u.imag() > 0) return {false, reduce(-I * u + (is_sin ? std::log(0.5 * I) : std::log(Complex(0.5))))};
    return {false, reduce(I * u + (is_sin ? -std::log(2.0 * I) : std::log(Complex(0.5))))};
  }

  DerivativeTable table_;
};

}  // namespace

NumericValue eval_numeric(const Expression& e, Complex point, const DefinitionEnvironment& env) {
  try {
    return {PlainEval(env).eval(e, point), false};
  } catch (const Overflow&) {
    const double inf = std::numeric_limits<double>::infinity();
    return {{inf, 0.0}, true};
  }
}

LogValue eval_log(const Expression& e, Complex point, const DefinitionEnvironment& env) {
  try {
    return {LogEval(env).eval(e, point), false};
  } catch (const Overflow&) {
    return {{false, {std::numeric_limits<double>::infinity(), 0.0}}, true};
  }
}

Complex constant_value(const Symbol* s) {
  if (s->kind != SymbolKind::Constant) throw DomainError("symbol '" + s->key + "' has no numeric value");
  static std::mutex mutex;
  static std::map<const Symbol*, Complex> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(s); it != cache.end()) return it->second;
  }
  Complex v;
  if (s->key == "pi") {
    v = std::numbers::pi;
  } else {
    NumericValue r = eval_numeric(parse_expression(s->key), 0.0);
    if (r.overflow) throw ExpansionError("constant '" + s->key + "' overflows");
    v = r.value;
  }
  std::lock_guard lock(mutex);
  cache.emplace(s, v);
  return v;
}

namespace {

Complex poly_value(const Poly& p, Complex z) {
  Complex total = 0.0;
  for (const auto& [m, c] : p.terms()) {
    Complex t = c.to_complex();
    for (const auto& [s, e] : m.factors()) {
      const Complex base = s->kind == SymbolKind::Variable ? z : constant_value(s);
      for (unsigned k = 0; k < e; ++k) t *= base;
    }
    total += t;
  }
  return total;
}

}  // namespace

Complex to_complex(const ExactScalar& x, Complex z) {
  if (x.is_polynomial()) return poly_value(x.numerator(), z);
  return poly_value(x.numerator(), z) / poly_value(x.denominator(), z);
}

}  // namespace adeq
