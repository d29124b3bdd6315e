#include <darboux/expr.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <numbers>
#include <set>

namespace darboux {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::lexical: return "lexical error";
    case ErrorKind::syntax: return "syntax error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::degenerate_parametrization: return "degenerate parametrization";
    case ErrorKind::validation: return "validation error";
    case ErrorKind::zero_speed: return "zero speed";
    case ErrorKind::undefined_frame: return "undefined frame";
    case ErrorKind::curvature_vanishes: return "curvature vanishes";
    case ErrorKind::hypothesis_violation: return "hypothesis violation";
    case ErrorKind::vanishing_field: return "vanishing field";
    case ErrorKind::non_finite: return "non-finite sample";
    case ErrorKind::case_ambiguity: return "case ambiguity";
    case ErrorKind::divisor_too_small: return "divisor too small";
    case ErrorKind::regularity_violation: return "regularity violation";
    case ErrorKind::missing_constant: return "missing constant";
    case ErrorKind::config: return "config error";
  }
  return "error";
}

namespace {

constexpr std::array<std::pair<std::string_view, Func>, 9> kFunctions{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"tan", Func::tan},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sqrt", Func::sqrt},
    {"sinh", Func::sinh},
    {"cosh", Func::cosh},
    {"atan", Func::atan},
}};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

std::optional<double> named_constant(std::string_view name) {
  if (name == "pi") return std::numbers::pi;
  if (name == "e") return std::numbers::e;
  return std::nullopt;
}

std::string format_number(double v) {
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  if (ec != std::errc{}) return "0";
  return std::string(buf.data(), end);
}

class Parser {
public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  Expr run() {
    if (tokens_.empty()) throw ParseError(ErrorKind::syntax, 0, "empty expression");
    ExprNodePtr root = expr();
    if (pos_ < tokens_.size()) {
      const Token& t = tokens_[pos_];
      if (t.text == ")") throw ParseError(ErrorKind::syntax, t.position, "unbalanced ')'");
      throw ParseError(ErrorKind::syntax, t.position, "unexpected token '" + t.text + "'");
    }
    return Expr(std::move(root));
  }

private:
  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }
  bool at(std::string_view text) const { return peek() && peek()->text == text; }
  std::size_t end_position() const {
    if (tokens_.empty()) return 0;
    return tokens_.back().position + tokens_.back().text.size();
  }

  ExprNodePtr expr() {
    ExprNodePtr lhs = term();
    while (at("+") || at("-")) {
      BinaryOp op = peek()->text == "+" ? BinaryOp::add : BinaryOp::sub;
      ++pos_;
      lhs = binary(op, lhs, term());
    }
    return lhs;
  }

  ExprNodePtr term() {
    ExprNodePtr lhs = unary();
    while (at("*") || at("/")) {
      BinaryOp op = peek()->text == "*" ? BinaryOp::mul : BinaryOp::div;
      ++pos_;
      lhs = binary(op, lhs, unary());
    }
    return lhs;
  }

  ExprNodePtr unary() {
    if (at("-")) {
      ++pos_;
      auto n = std::make_shared<ExprNode>();
      n->kind = ExprNode::Kind::negate;
      n->lhs = unary();
      return n;
    }
    return power();
  }

  ExprNodePtr power() {
    ExprNodePtr base = primary();
    if (at("^")) {
      ++pos_;
      return binary(BinaryOp::pow, base, unary());
    }
    return base;
  }

  ExprNodePtr primary() {
    const Token* t = peek();
    if (!t) throw ParseError(ErrorKind::syntax, end_position(), "missing operand");
    switch (t->kind) {
      case TokenKind::number: {
        ++pos_;
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::constant;
        std::from_chars(t->text.data(), t->text.data() + t->text.size(), n->value);
        return n;
      }
      case TokenKind::identifier: {
        ++pos_;
        if (auto f = function_from_name(t->text)) {
          if (!at("(")) throw ParseError(ErrorKind::syntax, t->position, "function '" + t->text + "' needs '('");
          const std::size_t open = peek()->position;
          ++pos_;
          auto n = std::make_shared<ExprNode>();
          n->kind = ExprNode::Kind::call;
          n->func = *f;
          n->name = t->text;
          n->lhs = expr();
          expect_close(open);
          return n;
        }
        if (at("(")) throw ParseError(ErrorKind::syntax, t->position, "unknown function '" + t->text + "'");
        auto n = std::make_shared<ExprNode>();
        n->name = t->text;
        if (auto c = named_constant(t->text)) {
          n->kind = ExprNode::Kind::named_constant;
          n->value = *c;
        } else {
          n->kind = ExprNode::Kind::variable;
        }
        return n;
      }
      case TokenKind::paren:
        if (t->text == "(") {
          const std::size_t open = t->position;
          ++pos_;
          ExprNodePtr inner = expr();
          expect_close(open);
          return inner;
        }
        throw ParseError(ErrorKind::syntax, t->position, "missing operand before ')'");
      case TokenKind::op:
        throw ParseError(ErrorKind::syntax, t->position, "missing operand before '" + t->text + "'");
      case TokenKind::comma:
        throw ParseError(ErrorKind::syntax, t->position, "unexpected ','");
    }
    throw ParseError(ErrorKind::syntax, t->position, "unexpected token");
  }

  void expect_close(std::size_t open_position) {
    if (!at(")")) {
      if (const Token* t = peek())
        throw ParseError(ErrorKind::syntax, t->position, "unbalanced paren: expected ')' but found '" + t->text + "'");
      throw ParseError(ErrorKind::syntax, open_position, "unbalanced paren: '(' is never closed");
    }
    ++pos_;
  }

  static ExprNodePtr binary(BinaryOp op, ExprNodePtr lhs, ExprNodePtr rhs) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::binary;
    n->op = op;
    if (op == BinaryOp::pow) {
      Expr exponent(rhs);
      if (exponent.variables().empty()) {
        double k = evaluate_constant(exponent);
        if (std::isfinite(k) && k == std::round(k) && std::abs(k) <= 1024) n->integer_exponent = static_cast<int>(k);
      }
    }
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

void print_node(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case ExprNode::Kind::constant: out += format_number(n.value); return;
    case ExprNode::Kind::named_constant:
    case ExprNode::Kind::variable: out += n.name; return;
    case ExprNode::Kind::negate:
      out += "(-";
      print_node(*n.lhs, out);
      out += ")";
      return;
    case ExprNode::Kind::binary: {
      static constexpr std::array<const char*, 5> ops{"+", "-", "*", "/", "^"};
      out += "(";
      print_node(*n.lhs, out);
      out += ops[static_cast<int>(n.op)];
      print_node(*n.rhs, out);
      out += ")";
      return;
    }
    case ExprNode::Kind::call:
      out += function_name(n.func);
      out += "(";
      print_node(*n.lhs, out);
      out += ")";
      return;
  }
}

void collect_variables(const ExprNode& n, std::set<std::string>& names) {
  if (n.kind == ExprNode::Kind::variable) names.insert(n.name);
  if (n.lhs) collect_variables(*n.lhs, names);
  if (n.rhs) collect_variables(*n.rhs, names);
}

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::constant: return a.value == b.value;
    case ExprNode::Kind::named_constant:
    case ExprNode::Kind::variable: return a.name == b.name;
    case ExprNode::Kind::negate: return equal_nodes(*a.lhs, *b.lhs);
    case ExprNode::Kind::binary: return a.op == b.op && equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
    case ExprNode::Kind::call: return a.func == b.func && equal_nodes(*a.lhs, *b.lhs);
  }
  return false;
}

}  // namespace

std::optional<Func> function_from_name(std::string_view name) {
  for (const auto& [n, f] : kFunctions)
    if (n == name) return f;
  return std::nullopt;
}

const char* function_name(Func f) {
  for (const auto& [n, g] : kFunctions)
    if (g == f) return n.data();
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c)) {
      while (i < text.size() && is_digit(text[i])) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        if (i >= text.size() || !is_digit(text[i]))
          throw ParseError(ErrorKind::lexical, i, "malformed numeric literal");
        while (i < text.size() && is_digit(text[i])) ++i;
      }
      if (i < text.size() && text[i] == '.') throw ParseError(ErrorKind::lexical, i, "malformed numeric literal");
      tokens.push_back({TokenKind::number, std::string(text.substr(start, i - start)), start});
    } else if (is_lower(c)) {
      while (i < text.size() && is_lower(text[i])) ++i;
      tokens.push_back({TokenKind::identifier, std::string(text.substr(start, i - start)), start});
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      tokens.push_back({TokenKind::op, std::string(1, c), start});
      ++i;
    } else if (c == '(' || c == ')') {
      tokens.push_back({TokenKind::paren, std::string(1, c), start});
      ++i;
    } else if (c == ',') {
      tokens.push_back({TokenKind::comma, ",", start});
      ++i;
    } else {
      throw ParseError(ErrorKind::lexical, i, std::string("unexpected character '") + c + "'");
    }
  }
  return tokens;
}

Expr parse(const std::vector<Token>& tokens) { return Parser(tokens).run(); }

Expr parse(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ParseError(ErrorKind::syntax, 0, "empty expression");
  return parse(tokenize(text));
}

std::string Expr::print() const {
  std::string out;
  if (root_) print_node(*root_, out);
  return out;
}

std::vector<std::string> Expr::variables() const {
  std::set<std::string> names;
  if (root_) collect_variables(*root_, names);
  return {names.begin(), names.end()};
}

bool Expr::depends_on(std::string_view name) const {
  const auto vars = variables();
  return std::find(vars.begin(), vars.end(), name) != vars.end();
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  return equal_nodes(*a.root_, *b.root_);
}

double evaluate(const Expr& e, double s) { return evaluate<double>(e, {{"s", s}}); }

Jet3 evalJet(const Expr& e, double s) { return evaluate<Jet3>(e, {{"s", Jet3::variable(s)}}); }

double evaluate_constant(const Expr& e) { return evaluate<double>(e, {}); }

}  // namespace darboux
