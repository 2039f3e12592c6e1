#include "adeq/expression.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "adeq/errors.hpp"

namespace adeq {

struct Expression::Node {
  NodeKind kind = NodeKind::Lit;
  mpq_class literal;
  std::string name;
  unsigned count = 0;
  std::vector<Expression> args;
};

namespace {

std::shared_ptr<const Expression::Node> zero_node() {
  static const auto n = std::make_shared<const Expression::Node>();
  return n;
}

}  // namespace

Expression::Expression() : node_(zero_node()) {}

NodeKind Expression::kind() const { return node_->kind; }
const mpq_class& Expression::literal() const { return node_->literal; }
const std::string& Expression::name() const { return node_->name; }
unsigned Expression::count() const { return node_->count; }
std::size_t Expression::arity() const { return node_->args.size(); }
const Expression& Expression::arg(std::size_t i) const { return node_->args.at(i); }

bool Expression::is_literal(long v) const { return kind() == NodeKind::Lit && literal() == v; }

namespace {

Expression make(NodeKind kind, std::vector<Expression> args = {}, std::string name = {}, unsigned count = 0,
                mpq_class literal = 0);

}  // namespace

// Expression's private constructor is reachable only from members, so the
// factory helper lives behind this member-access shim.
struct ExpressionFactory {
  static Expression wrap(std::shared_ptr<const Expression::Node> n) { return Expression(std::move(n)); }
};

namespace {

Expression make(NodeKind kind, std::vector<Expression> args, std::string name, unsigned count, mpq_class literal) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->args = std::move(args);
  n->name = std::move(name);
  n->count = count;
  literal.canonicalize();
  n->literal = std::move(literal);
  return ExpressionFactory::wrap(std::move(n));
}

}  // namespace

Expression Expression::var() {
  static const Expression v = make(NodeKind::Var);
  return v;
}
Expression Expression::lit(mpq_class q) { return make(NodeKind::Lit, {}, {}, 0, std::move(q)); }
Expression Expression::imag_unit() { return make(NodeKind::ImagUnit); }
Expression Expression::pi() { return make(NodeKind::Pi); }
Expression Expression::neg(Expression a) {
  if (a.kind() == NodeKind::Lit) return lit(mpq_class(-a.literal()));
  return make(NodeKind::Neg, {std::move(a)});
}
Expression Expression::add(Expression a, Expression b) { return make(NodeKind::Add, {std::move(a), std::move(b)}); }
Expression Expression::sub(Expression a, Expression b) { return make(NodeKind::Sub, {std::move(a), std::move(b)}); }
Expression Expression::mul(Expression a, Expression b) { return make(NodeKind::Mul, {std::move(a), std::move(b)}); }
Expression Expression::div(Expression a, Expression b) { return make(NodeKind::Div, {std::move(a), std::move(b)}); }
Expression Expression::pow(Expression a, unsigned n) { return make(NodeKind::Pow, {std::move(a)}, {}, n); }
Expression Expression::exp(Expression a) { return make(NodeKind::Exp, {std::move(a)}); }
Expression Expression::sin(Expression a) { return make(NodeKind::Sin, {std::move(a)}); }
Expression Expression::cos(Expression a) { return make(NodeKind::Cos, {std::move(a)}); }
Expression Expression::ref(std::string name, unsigned order) { return make(NodeKind::Ref, {}, std::move(name), order); }
Expression Expression::compose(std::string name, unsigned order, Expression inner) {
  return make(NodeKind::Compose, {std::move(inner)}, std::move(name), order);
}
Expression Expression::iterate(std::string name, unsigned n) { return make(NodeKind::Iterate, {}, std::move(name), n); }

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.count() != b.count() || a.name() != b.name() || a.arity() != b.arity())
    return false;
  if (a.kind() == NodeKind::Lit && a.literal() != b.literal()) return false;
  for (std::size_t k = 0; k < a.arity(); ++k)
    if (a.arg(k) != b.arg(k)) return false;
  return true;
}

bool Expression::is_constant() const {
  switch (kind()) {
    case NodeKind::Var:
    case NodeKind::Ref:
    case NodeKind::Compose:
    case NodeKind::Iterate:
      return false;
    default:
      return std::all_of(node_->args.begin(), node_->args.end(), [](const Expression& a) { return a.is_constant(); });
  }
}

void Expression::collect_names(std::vector<std::string>& out) const {
  if (kind() == NodeKind::Ref || kind() == NodeKind::Compose || kind() == NodeKind::Iterate) {
    if (std::find(out.begin(), out.end(), name()) == out.end()) out.push_back(name());
  }
  for (const Expression& a : node_->args) a.collect_names(out);
}

// ----------------------------------------------------------------- printing

namespace {

int precedence(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Neg:
      return 3;
    case NodeKind::Pow:
      return 4;
    case NodeKind::Lit:
      if (sgn(e.literal()) < 0) return 3;
      return e.literal().get_den() == 1 ? 5 : 4;
    default:
      return 5;
  }
}

std::string print(const Expression& e);

std::string wrap(const Expression& e, int min_prec) {
  std::string s = print(e);
  return precedence(e) >= min_prec ? s : "(" + s + ")";
}

std::string primes(unsigned k) { return std::string(k, '\''); }

std::string print(const Expression& e) {
  switch (e.kind()) {
    case NodeKind::Var:
      return "z";
    case NodeKind::Lit:
      return e.literal().get_str();
    case NodeKind::ImagUnit:
      return "i";
    case NodeKind::Pi:
      return "pi";
    case NodeKind::Neg:
      return "-" + wrap(e.arg(0), 3);
    case NodeKind::Add:
      return wrap(e.arg(0), 1) + "+" + wrap(e.arg(1), 2);
    case NodeKind::Sub:
      return wrap(e.arg(0), 1) + "-" + wrap(e.arg(1), 2);
    case NodeKind::Mul:
      return wrap(e.arg(0), 2) + "*" + wrap(e.arg(1), 3);
    case NodeKind::Div: {
      std::string left = wrap(e.arg(0), 2);
      std::string right = wrap(e.arg(1), 3);
      // "2/3" would re-read as one rational literal.
      if (std::isdigit(static_cast<unsigned char>(left.back())) &&
          std::isdigit(static_cast<unsigned char>(right.front())))
        right = "(" + right + ")";
      return left + "/" + right;
    }
    case NodeKind::Pow:
      return wrap(e.arg(0), 5) + "^" + std::to_string(e.count());
    case NodeKind::Exp:
      return "exp(" + print(e.arg(0)) + ")";
    case NodeKind::Sin:
      return "sin(" + print(e.arg(0)) + ")";
    case NodeKind::Cos:
      return "cos(" + print(e.arg(0)) + ")";
    case NodeKind::Ref:
      return e.name() + primes(e.count());
    case NodeKind::Compose:
      return e.name() + primes(e.count()) + "(" + print(e.arg(0)) + ")";
    case NodeKind::Iterate:
      return "iter(" + e.name() + "," + std::to_string(e.count()) + ")";
  }
  return {};
}

}  // namespace

std::string Expression::to_string() const { return print(*this); }

// ------------------------------------------------------ simplifying builders

namespace build {

Expression neg(const Expression& a) {
  if (a.kind() == NodeKind::Neg) return a.arg(0);
  return Expression::neg(a);
}

Expression add(const Expression& a, const Expression& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.kind() == NodeKind::Lit && b.kind() == NodeKind::Lit) return Expression::lit(mpq_class(a.literal() + b.literal()));
  if (b.kind() == NodeKind::Lit && sgn(b.literal()) < 0) return Expression::sub(a, Expression::lit(mpq_class(-b.literal())));
  if (b.kind() == NodeKind::Neg) return Expression::sub(a, b.arg(0));
  return Expression::add(a, b);
}

Expression sub(const Expression& a, const Expression& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return neg(b);
  if (a.kind() == NodeKind::Lit && b.kind() == NodeKind::Lit) return Expression::lit(mpq_class(a.literal() - b.literal()));
  if (a == b) return Expression::lit(0);
  if (b.kind() == NodeKind::Neg) return Expression::add(a, b.arg(0));
  return Expression::sub(a, b);
}

Expression mul(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return Expression::lit(0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (a.kind() == NodeKind::Lit && b.kind() == NodeKind::Lit) return Expression::lit(mpq_class(a.literal() * b.literal()));
  if (a.is_literal(-1)) return neg(b);
  if (b.is_literal(-1)) return neg(a);
  return Expression::mul(a, b);
}

Expression div(const Expression& a, const Expression& b) {
  if (a.is_zero()) return Expression::lit(0);
  if (b.is_one()) return a;
  if (a.kind() == NodeKind::Lit && b.kind() == NodeKind::Lit && sgn(b.literal()) != 0)
    return Expression::lit(mpq_class(a.literal() / b.literal()));
  return Expression::div(a, b);
}

Expression pow(const Expression& a, unsigned n) {
  if (n == 0) return Expression::lit(1);
  if (n == 1) return a;
  if (a.kind() == NodeKind::Lit) {
    mpq_class r = 1;
    for (unsigned k = 0; k < n; ++k) r *= a.literal();
    return Expression::lit(r);
  }
  return Expression::pow(a, n);
}

}  // namespace build

// -------------------------------------------------------------- environment

bool is_reserved_name(std::string_view name) {
  static const std::array<std::string_view, 7> reserved{"z", "i", "pi", "exp", "sin", "cos", "iter"};
  return std::find(reserved.begin(), reserved.end(), name) != reserved.end();
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void DefinitionEnvironment::define(const std::string& name, const Expression& e) {
  if (!is_identifier(name) || is_reserved_name(name)) throw DomainError("invalid function name '" + name + "'");
  if (contains(name)) throw DomainError("function '" + name + "' is defined twice");
  std::vector<std::string> used;
  e.collect_names(used);
  for (const std::string& u : used)
    if (!contains(u)) throw DomainError("definition of '" + name + "' references undefined '" + u + "'");
  entries_.emplace_back(name, e);
}

void DefinitionEnvironment::define(const std::string& name, std::string_view text) {
  define(name, parse_expression(text, *this));
}

void DefinitionEnvironment::define_from_flag(std::string_view flag) {
  const auto eq = flag.find('=');
  if (eq == std::string_view::npos) throw DomainError("definition must have the form name=expr");
  std::string name(flag.substr(0, eq));
  name.erase(std::remove_if(name.begin(), name.end(), [](unsigned char c) { return std::isspace(c); }), name.end());
  define(name, flag.substr(eq + 1));
}

bool DefinitionEnvironment::contains(std::string_view name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& kv) { return kv.first == name; });
}

const Expression& DefinitionEnvironment::lookup(std::string_view name) const {
  for (const auto& [n, e] : entries_)
    if (n == name) return e;
  throw ExpansionError("undefined function '" + std::string(name) + "'");
}

// ------------------------------------------------------------------ parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Expression parse() {
    Expression e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  mpz_class integer() {
    if (!peek_digit()) fail("expected an integer");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  unsigned small_integer() {
    const std::size_t at = (skip_ws(), pos_);
    mpz_class v = integer();
    if (v > 1000000) fail_at("integer too large", at);
    return static_cast<unsigned>(v.get_ui());
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      fail("expected a name");
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool known(std::string_view name) const {
    if (options_.env != nullptr && options_.env->contains(name)) return true;
    return options_.extra_names && options_.extra_names(name);
  }

  Expression expr() {
    Expression e = term();
    for (;;) {
      if (accept('+')) {
        e = Expression::add(e, term());
      } else if (accept('-')) {
        e = Expression::sub(e, term());
      } else {
        return e;
      }
    }
  }

  Expression term() {
    Expression e = unary();
    for (;;) {
      if (accept('*')) {
        e = Expression::mul(e, unary());
      } else if (accept('/')) {
        e = Expression::div(e, unary());
      } else {
        return e;
      }
    }
  }

  Expression unary() {
    if (accept('-')) return Expression::neg(unary());
    return factor();
  }

  Expression factor() {
    Expression b = base();
    if (accept('^')) return Expression::pow(b, small_integer());
    return b;
  }

  Expression base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (c == '(') {
      ++pos_;
      Expression e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return named();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  Expression rational() {
    mpz_class num = integer();
    const std::size_t save = pos_;
    if (accept('/') && peek_digit()) {
      const std::size_t at = pos_;
      mpz_class den = integer();
      if (den == 0) fail_at("zero denominator in rational literal", at);
      return Expression::lit(mpq_class(num, den));
    }
    pos_ = save;
    return Expression::lit(mpq_class(num));
  }

  unsigned primes() {
    unsigned k = 0;
    while (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      ++k;
    }
    return k;
  }

  Expression named() {
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name == "z") return Expression::var();
    if (name == "i") return Expression::imag_unit();
    if (name == "pi") return Expression::pi();
    if (name == "exp" || name == "sin" || name == "cos") {
      expect('(');
      Expression a = expr();
      expect(')');
      if (name == "exp") return Expression::exp(a);
      if (name == "sin") return Expression::sin(a);
      return Expression::cos(a);
    }
    if (name == "iter") {
      expect('(');
      const std::size_t name_at = (skip_ws(), pos_);
      const std::string f = identifier();
      if (!known(f)) fail_at("unknown identifier '" + f + "'", name_at);
      expect(',');
      const std::size_t count_at = (skip_ws(), pos_);
      const unsigned n = small_integer();
      if (n == 0) fail_at("iterate count must be positive", count_at);
      expect(')');
      return Expression::iterate(f, n);
    }
    const unsigned order = primes();
    if (!known(name)) fail_at("unknown identifier '" + name + "'", start);
    if (accept('(')) {
      Expression a = expr();
      expect(')');
      return Expression::compose(name, order, a);
    }
    return Expression::ref(name, order);
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).parse();
}

Expression parse_expression(std::string_view text, const DefinitionEnvironment& env) {
  ParseOptions o;
  o.env = &env;
  return parse_expression(text, o);
}

// ------------------------------------------------------------ calculus

Expression differentiate(const Expression& e) {
  using namespace build;
  switch (e.kind()) {
    case NodeKind::Var:
      return Expression::lit(1);
    case NodeKind::Lit:
    case NodeKind::ImagUnit:
    case NodeKind::Pi:
      return Expression::lit(0);
    case NodeKind::Neg:
      return neg(differentiate(e.arg(0)));
    case NodeKind::Add:
      return add(differentiate(e.arg(0)), differentiate(e.arg(1)));
    case NodeKind::Sub:
      return sub(differentiate(e.arg(0)), differentiate(e.arg(1)));
    case NodeKind::Mul:
      return add(mul(differentiate(e.arg(0)), e.arg(1)), mul(e.arg(0), differentiate(e.arg(1))));
    case NodeKind::Div: {
      const Expression& a = e.arg(0);
      const Expression& b = e.arg(1);
      return div(sub(mul(differentiate(a), b), mul(a, differentiate(b))), pow(b, 2));
    }
    case NodeKind::Pow: {
      const unsigned n = e.count();
      if (n == 0) return Expression::lit(0);
      return mul(mul(Expression::lit(static_cast<long>(n)), pow(e.arg(0), n - 1)), differentiate(e.arg(0)));
    }
    case NodeKind::Exp:
      return mul(e, differentiate(e.arg(0)));
    case NodeKind::Sin:
      return mul(Expression::cos(e.arg(0)), differentiate(e.arg(0)));
    case NodeKind::Cos:
      return mul(neg(Expression::sin(e.arg(0))), differentiate(e.arg(0)));
    case NodeKind::Ref:
      return Expression::ref(e.name(), e.count() + 1);
    case NodeKind::Compose:
      return mul(Expression::compose(e.name(), e.count() + 1, e.arg(0)), differentiate(e.arg(0)));
    case NodeKind::Iterate: {
      if (e.count() == 1) return Expression::ref(e.name(), 1);
      const Expression inner = e.count() == 2 ? Expression::ref(e.name()) : Expression::iterate(e.name(), e.count() - 1);
      return mul(Expression::compose(e.name(), 1, inner), differentiate(inner));
    }
  }
  return Expression::lit(0);
}

Expression substitute(const Expression& e, const Expression& inner) {
  switch (e.kind()) {
    case NodeKind::Var:
      return inner;
    case NodeKind::Lit:
    case NodeKind::ImagUnit:
    case NodeKind::Pi:
      return e;
    case NodeKind::Neg:
      return Expression::neg(substitute(e.arg(0), inner));
    case NodeKind::Add:
      return Expression::add(substitute(e.arg(0), inner), substitute(e.arg(1), inner));
    case NodeKind::Sub:
      return Expression::sub(substitute(e.arg(0), inner), substitute(e.arg(1), inner));
    case NodeKind::Mul:
      return Expression::mul(substitute(e.arg(0), inner), substitute(e.arg(1), inner));
    case NodeKind::Div:
      return Expression::div(substitute(e.arg(0), inner), substitute(e.arg(1), inner));
    case NodeKind::Pow:
      return Expression::pow(substitute(e.arg(0), inner), e.count());
    case NodeKind::Exp:
      return Expression::exp(substitute(e.arg(0), inner));
    case NodeKind::Sin:
      return Expression::sin(substitute(e.arg(0), inner));
    case NodeKind::Cos:
      return Expression::cos(substitute(e.arg(0), inner));
    case NodeKind::Ref:
      return Expression::compose(e.name(), e.count(), inner);
    case NodeKind::Compose:
      return Expression::compose(e.name(), e.count(), substitute(e.arg(0), inner));
    case NodeKind::Iterate: {
      Expression r = inner;
      for (unsigned k = 0; k < e.count(); ++k) r = Expression::compose(e.name(), 0, r);
      return r;
    }
  }
  return e;
}

}  // namespace adeq
