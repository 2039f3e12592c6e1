#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace adeq {

enum class NodeKind {
  Var,       // z
  Lit,       // rational literal
  ImagUnit,  // i
  Pi,        // pi
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Pow,      // integer power, exponent in count()
  Exp,
  Sin,
  Cos,
  Ref,      // f^(k)(z): name(), derivative order in count()
  Compose,  // f^(k)(inner): name(), count() = k, arg(0) = inner
  Iterate,  // n-fold self-composition of a named function, n = count()
};

/// Immutable closed-form expression in the variable z.
///
/// Nodes are shared; copying an Expression is cheap. Equality is structural.
class Expression {
 public:
  struct Node;

  Expression();  // the literal 0

  NodeKind kind() const;
  const mpq_class& literal() const;
  const std::string& name() const;
  unsigned count() const;
  std::size_t arity() const;
  const Expression& arg(std::size_t i) const;

  bool is_literal(long v) const;
  bool is_zero() const { return is_literal(0); }
  bool is_one() const { return is_literal(1); }

  // Raw constructors; only neg() folds literals so that Neg(Lit) never occurs.
  static Expression var();
  static Expression lit(mpq_class q);
  static Expression lit(long v) { return lit(mpq_class(v)); }
  static Expression imag_unit();
  static Expression pi();
  static Expression neg(Expression a);
  static Expression add(Expression a, Expression b);
  static Expression sub(Expression a, Expression b);
  static Expression mul(Expression a, Expression b);
  static Expression div(Expression a, Expression b);
  static Expression pow(Expression a, unsigned n);
  static Expression exp(Expression a);
  static Expression sin(Expression a);
  static Expression cos(Expression a);
  static Expression ref(std::string name, unsigned order = 0);
  static Expression compose(std::string name, unsigned order, Expression inner);
  static Expression iterate(std::string name, unsigned n);

  /// Canonical text with minimal parentheses; parse(to_string()) == *this.
  std::string to_string() const;

  /// True when no node is z, a reference, a composition or an iterate.
  bool is_constant() const;
  /// Names referenced by Ref, Compose and Iterate nodes.
  void collect_names(std::vector<std::string>& out) const;

  friend bool operator==(const Expression& a, const Expression& b);
  friend bool operator!=(const Expression& a, const Expression& b) { return !(a == b); }

 private:
  friend struct ExpressionFactory;
  explicit Expression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Light-simplifying constructors (0/1 identities, literal folding) used when
/// building derivatives and rewrites.
namespace build {
Expression add(const Expression& a, const Expression& b);
Expression sub(const Expression& a, const Expression& b);
Expression mul(const Expression& a, const Expression& b);
Expression div(const Expression& a, const Expression& b);
Expression pow(const Expression& a, unsigned n);
Expression neg(const Expression& a);
}  // namespace build

/// Ordered name -> definition map. Names resolve only to earlier entries,
/// so the environment is acyclic by construction.
class DefinitionEnvironment {
 public:
  void define(const std::string& name, const Expression& e);
  /// Parses `text` against the current environment and defines it.
  void define(const std::string& name, std::string_view text);
  /// Parses "name=expr".
  void define_from_flag(std::string_view flag);

  bool contains(std::string_view name) const;
  const Expression& lookup(std::string_view name) const;
  const std::vector<std::pair<std::string, Expression>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, Expression>> entries_;
};

bool is_reserved_name(std::string_view name);
bool is_identifier(std::string_view name);

struct ParseOptions {
  const DefinitionEnvironment* env = nullptr;
  /// Accepts extra bare identifiers (e.g. y0..y9 in differential polynomials).
  std::function<bool(std::string_view)> extra_names;
};

/// Parses the expression grammar. Throws ParseError with a byte offset.
Expression parse_expression(std::string_view text, const ParseOptions& options = {});
Expression parse_expression(std::string_view text, const DefinitionEnvironment& env);

/// Exact symbolic d/dz. Named references stay symbolic: d f = f', and
/// iterates follow the chain rule along the orbit.
Expression differentiate(const Expression& e);

/// e with z replaced by `inner` (references become compositions).
Expression substitute(const Expression& e, const Expression& inner);

}  // namespace adeq
