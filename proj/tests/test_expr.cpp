#include "support.hpp"

#include <gtest/gtest.h>

using namespace darboux;
using testing_support::ExprGenerator;

namespace {

std::vector<std::pair<TokenKind, std::string>> kinds(std::string_view text) {
  std::vector<std::pair<TokenKind, std::string>> out;
  for (const Token& t : tokenize(text)) out.emplace_back(t.kind, t.text);
  return out;
}

template <class F>
void expectParseError(F&& f, ErrorKind kind, std::size_t position) {
  try {
    f();
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), kind);
    EXPECT_EQ(e.position(), position) << e.what();
  }
}

}  // namespace

TEST(Tokenize, SingleIdentifier) {
  const auto t = tokenize("s");
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].kind, TokenKind::identifier);
  EXPECT_EQ(t[0].text, "s");
}

TEST(Tokenize, NestedCall) {
  using K = TokenKind;
  const std::vector<std::pair<K, std::string>> expected{
      {K::identifier, "sin"}, {K::paren, "("}, {K::identifier, "s"}, {K::op, "/"}, {K::identifier, "sqrt"},
      {K::paren, "("},        {K::number, "2"}, {K::paren, ")"},     {K::paren, ")"}};
  EXPECT_EQ(kinds("sin(s/sqrt(2))"), expected);
}

TEST(Tokenize, PositionsIncreaseAndTextsReassemble) {
  const std::string text = "  2.5 * sin( s ) ^ 3 - e";
  const auto tokens = tokenize(text);
  std::string joined, stripped;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) EXPECT_GT(tokens[i].position, tokens[i - 1].position);
    EXPECT_EQ(text.substr(tokens[i].position, tokens[i].text.size()), tokens[i].text);
    joined += tokens[i].text;
  }
  for (char c : text)
    if (c != ' ') stripped += c;
  EXPECT_EQ(joined, stripped);
}

TEST(Tokenize, DoubleDotIsLexicalError) {
  expectParseError([] { tokenize("2..3"); }, ErrorKind::lexical, 2);
}

TEST(Tokenize, UnknownCharacter) {
  expectParseError([] { tokenize("s # 2"); }, ErrorKind::lexical, 2);
}

TEST(Parse, Precedence) { EXPECT_DOUBLE_EQ(evaluate(parse("1+2*3"), 0.0), 7.0); }

TEST(Parse, UnaryMinusBindsLooserThanPower) {
  const Expr e = parse("-s^2");
  EXPECT_EQ(e.root().kind, ExprNode::Kind::negate);
  EXPECT_EQ(e.root().lhs->kind, ExprNode::Kind::binary);
  EXPECT_EQ(e.root().lhs->op, BinaryOp::pow);
  EXPECT_DOUBLE_EQ(evaluate(e, 2.0), -4.0);
}

TEST(Parse, PowerIsRightAssociative) { EXPECT_DOUBLE_EQ(evaluate(parse("2^3^2"), 0.0), 512.0); }

TEST(Parse, UnbalancedParen) {
  try {
    parse("cos(s");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::syntax);
    EXPECT_NE(std::string(e.what()).find("unbalanced"), std::string::npos);
  }
}

TEST(Parse, SyntaxErrors) {
  for (const char* bad : {"1+", "*s", "s)", "()", "foo(s)", "sin s", "1,2"}) {
    try {
      parse(bad);
      ADD_FAILURE() << bad;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::syntax) << bad;
    }
  }
}

TEST(Parse, ReservedConstants) {
  EXPECT_DOUBLE_EQ(evaluate_constant(parse("8*pi")), 8.0 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(evaluate_constant(parse("e")), std::numbers::e);
  EXPECT_THROW(evaluate_constant(parse("s+1")), Error);
}

TEST(EvalJet, Identity) {
  const Jet3 j = evalJet(parse("s"), 3.0);
  EXPECT_EQ(j.derivative(0), 3.0);
  EXPECT_EQ(j.derivative(1), 1.0);
  EXPECT_EQ(j.derivative(2), 0.0);
  EXPECT_EQ(j.derivative(3), 0.0);
}

TEST(EvalJet, ScaledSine) {
  const Jet3 j = evalJet(parse("sin(s/sqrt(2))"), 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(j.derivative(0), 0.0, 1e-15);
  EXPECT_NEAR(j.derivative(1), r, 1e-15);
  EXPECT_NEAR(j.derivative(2), 0.0, 1e-15);
  EXPECT_NEAR(j.derivative(3), -r * r * r, 1e-15);
  // Independent check by finite differences.
  const Expr e = parse("sin(s/sqrt(2))");
  auto f = [&](double s) { return evaluate(e, s); };
  EXPECT_NEAR(j.derivative(1), testing_support::fd1(f, 0.0, 1e-4), 1e-10);
  EXPECT_NEAR(j.derivative(3), testing_support::fd3(f, 0.0, 1e-2), 1e-4);
}

TEST(EvalJet, LeibnizProduct) {
  const Jet3 j = evalJet(parse("exp(s)*s"), 0.0);
  EXPECT_NEAR(j.derivative(0), 0.0, 1e-15);
  EXPECT_NEAR(j.derivative(1), 1.0, 1e-15);
  EXPECT_NEAR(j.derivative(2), 2.0, 1e-15);
  EXPECT_NEAR(j.derivative(3), 3.0, 1e-14);
}

TEST(EvalJet, IntegerPowerAtZeroBase) {
  const Jet3 j = evalJet(parse("s^3"), 0.0);
  EXPECT_EQ(j.derivative(3), 6.0);
  EXPECT_EQ(j.derivative(1), 0.0);
}

TEST(EvalJet, DomainErrors) {
  for (auto [text, s] : std::vector<std::pair<const char*, double>>{
           {"1/s", 0.0}, {"log(s)", -1.0}, {"sqrt(s)", -1.0}, {"s^-1", 0.0}, {"s^0.5", -2.0}}) {
    try {
      evalJet(parse(text), s);
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::domain) << text;
    }
  }
}

TEST(ExprProperty, JetMatchesFiniteDifferences) {
  ExprGenerator gen(20261015u);
  for (int i = 0; i < 200; ++i) {
    const std::string text = gen.make();
    const double s = gen.uniform(-2.0, 2.0);
    const Expr e = parse(text);
    const Jet3 j = evalJet(e, s);
    auto f = [&](double x) { return evaluate(e, x); };
    const double d1 = j.derivative(1), d2 = j.derivative(2), d3 = j.derivative(3);
    EXPECT_LE(std::abs(d1 - testing_support::fd1(f, s, 1e-4)), 1e-6 * (1 + std::abs(d1))) << text << " at " << s;
    EXPECT_LE(std::abs(d2 - testing_support::fd2(f, s, 1e-4)), 1e-4 * (1 + std::abs(d2))) << text << " at " << s;
    EXPECT_LE(std::abs(d3 - testing_support::fd3(f, s, 1e-4)), 1e-2 * (1 + std::abs(d3))) << text << " at " << s;
  }
}

TEST(ExprProperty, PythagoreanIdentity) {
  ExprGenerator gen(7u);
  for (int i = 0; i < 200; ++i) {
    // Moderate subexpressions: the cancellation error grows like |u'|^3 in the third derivative.
    const std::string sub = gen.make(2);
    const double s = gen.uniform(-1.0, 1.0);
    const Jet3 j = evalJet(parse("sin(" + sub + ")^2 + cos(" + sub + ")^2"), s);
    EXPECT_NEAR(j.derivative(0), 1.0, 1e-12) << sub;
    for (int k = 1; k <= 3; ++k) EXPECT_NEAR(j.derivative(k), 0.0, 1e-12) << sub << " order " << k;
  }
}

TEST(ExprProperty, PrintParseFixpoint) {
  ExprGenerator gen(99u);
  for (int i = 0; i < 200; ++i) {
    const Expr e = parse(gen.make());
    const Expr again = parse(e.print());
    EXPECT_TRUE(structurally_equal(e, again)) << e.print();
    EXPECT_EQ(again.print(), e.print());
  }
}

TEST(ExprProperty, PrintKeepsUnaryMinusConvention) {
  for (const char* text : {"-s^2", "(-s)^2", "2^-1", "-(s+1)*3", "s-(1-s)"}) {
    const Expr e = parse(text);
    EXPECT_TRUE(structurally_equal(e, parse(e.print()))) << text;
    EXPECT_DOUBLE_EQ(evaluate(e, 1.5), evaluate(parse(e.print()), 1.5)) << text;
  }
}
