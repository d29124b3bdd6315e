#pragma once

// Analytic scalar expressions with exact derivatives.
//
// Grammar (see docs/expressions.md):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | identifier | identifier '(' expr ')' | '(' expr ')'
//
// so "-s^2" is -(s^2) and "2^-1" is 0.5. Identifiers are [a-z]+; `pi` and `e`
// are reserved constants, the nine function names are reserved, and every
// other identifier is a variable bound at evaluation time.

#include <darboux/errors.hpp>
#include <darboux/jet.hpp>

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace darboux {

enum class TokenKind { number, identifier, op, paren, comma };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;
};

std::vector<Token> tokenize(std::string_view text);

enum class Func { sin, cos, tan, exp, log, sqrt, sinh, cosh, atan };
enum class BinaryOp { add, sub, mul, div, pow };

std::optional<Func> function_from_name(std::string_view name);
const char* function_name(Func f);

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  enum class Kind { constant, named_constant, variable, negate, binary, call };

  Kind kind;
  double value = 0.0;        // constant / named_constant
  std::string name;          // variable / named_constant
  BinaryOp op = BinaryOp::add;
  Func func = Func::sin;
  ExprNodePtr lhs, rhs;      // negate and call use lhs only
  std::optional<int> integer_exponent;  // pow with a constant integer exponent
};

// Immutable expression tree; cheap to copy (shared nodes).
class Expr {
public:
  Expr() = default;
  explicit Expr(ExprNodePtr root) : root_(std::move(root)) {}

  const ExprNode& root() const { return *root_; }
  bool empty() const { return !root_; }

  /// Canonical fully parenthesized text; parse(print(e)) is structurally equal to e.
  std::string print() const;
  std::vector<std::string> variables() const;
  bool depends_on(std::string_view name) const;

  friend bool structurally_equal(const Expr& a, const Expr& b);

private:
  ExprNodePtr root_;
};

Expr parse(const std::vector<Token>& tokens);
Expr parse(std::string_view text);

template <class T>
struct Binding {
  std::string_view name;
  T value;
};

namespace detail {

inline double primal(double x) { return x; }
template <int N>
double primal(const Jet<N>& x) {
  return x.c[0];
}
template <class T>
double primal(const Dual<T>& x) {
  return primal(x.a);
}

template <class T>
T eval_node(const ExprNode& n, const std::vector<Binding<T>>& env) {
  using std::atan;
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tan;
  switch (n.kind) {
    case ExprNode::Kind::constant:
    case ExprNode::Kind::named_constant:
      return T(n.value);
    case ExprNode::Kind::variable:
      for (const auto& b : env)
        if (b.name == n.name) return b.value;
      fail(ErrorKind::domain, "unbound variable '" + n.name + "'");
    case ExprNode::Kind::negate:
      return -eval_node(*n.lhs, env);
    case ExprNode::Kind::binary: {
      T a = eval_node(*n.lhs, env);
      if (n.op == BinaryOp::pow && n.integer_exponent) {
        if (*n.integer_exponent < 0 && primal(a) == 0.0) fail(ErrorKind::domain, "division by zero");
        return ipow(a, *n.integer_exponent);
      }
      T b = eval_node(*n.rhs, env);
      switch (n.op) {
        case BinaryOp::add: return a + b;
        case BinaryOp::sub: return a - b;
        case BinaryOp::mul: return a * b;
        case BinaryOp::div:
          if (primal(b) == 0.0) fail(ErrorKind::domain, "division by zero");
          return a / b;
        case BinaryOp::pow:
          if (!(primal(a) > 0.0)) fail(ErrorKind::domain, "non-integer power of non-positive base");
          return exp(b * log(a));
      }
      break;
    }
    case ExprNode::Kind::call: {
      T a = eval_node(*n.lhs, env);
      const double p = primal(a);
      switch (n.func) {
        case Func::sin: return sin(a);
        case Func::cos: return cos(a);
        case Func::tan:
          if (std::cos(p) == 0.0) fail(ErrorKind::domain, "tan at a pole");
          return tan(a);
        case Func::exp: return exp(a);
        case Func::log:
          if (!(p > 0.0)) fail(ErrorKind::domain, "log of non-positive argument");
          return log(a);
        case Func::sqrt:
          if (p < 0.0) fail(ErrorKind::domain, "sqrt of negative argument");
          return sqrt(a);
        case Func::sinh: return sinh(a);
        case Func::cosh: return cosh(a);
        case Func::atan: return atan(a);
      }
      break;
    }
  }
  fail(ErrorKind::domain, "malformed expression node");
}

}  // namespace detail

/// Evaluates `e` over any scalar-like type with the given variable bindings.
template <class T>
T evaluate(const Expr& e, const std::vector<Binding<T>>& env) {
  return detail::eval_node<T>(e.root(), env);
}

double evaluate(const Expr& e, double s);

/// (f, f', f'', f''') at s, with s bound to the variable `s`.
Jet3 evalJet(const Expr& e, double s);

/// Value of an expression with no free variables (e.g. "8*pi").
double evaluate_constant(const Expr& e);

}  // namespace darboux
