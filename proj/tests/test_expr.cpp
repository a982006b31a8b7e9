#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "basel/expr.hpp"

using namespace basel::expr;

namespace {

Expr num(double v) { return Expr::constant(v); }
Expr var(Var v) { return Expr::variable(v); }
Expr bin(BinaryOp op, Expr a, Expr b) { return Expr::binary(op, std::move(a), std::move(b)); }

double eval_text(std::string_view text, Bindings b = {}) { return eval(parse(text), b); }

std::size_t error_position(std::string_view text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no ParseError for: " << text);
  return 0;
}

EvalError::Kind eval_error(std::string_view text, Bindings b = {}) {
  try {
    eval_text(text, b);
  } catch (const EvalError& e) {
    return e.kind();
  }
  FAIL("no EvalError for: " << text);
  return EvalError::Kind::DomainError;
}

Expr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  switch (pick(rng)) {
    case 0: {
      std::uniform_int_distribution<int> which(0, 3);
      const int w = which(rng);
      if (w == 0) return num(std::numbers::pi);
      if (w == 1) return num(std::uniform_int_distribution<int>(0, 100)(rng));
      if (w == 2) return num(std::ldexp(std::uniform_real_distribution<double>(0.0, 1.0)(rng), std::uniform_int_distribution<int>(-300, 300)(rng)));
      return num(std::uniform_real_distribution<double>(0.0, 10.0)(rng));
    }
    case 1:
      return var(static_cast<Var>(std::uniform_int_distribution<int>(0, 2)(rng)));
    case 2:
      return Expr::negate(random_tree(rng, depth - 1));
    case 3:
      return Expr::call(static_cast<Function>(std::uniform_int_distribution<int>(0, 3)(rng)),
                        random_tree(rng, depth - 1));
    default:
      return bin(static_cast<BinaryOp>(std::uniform_int_distribution<int>(0, 4)(rng)), random_tree(rng, depth - 1),
                 random_tree(rng, depth - 1));
  }
}

int depth(const Expr& e) {
  return std::visit(
      [](const auto& n) -> int {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Negate>) return 1 + depth(*n.child);
        if constexpr (std::is_same_v<T, Call>) return 1 + depth(*n.argument);
        if constexpr (std::is_same_v<T, Binary>) return 1 + std::max(depth(*n.left), depth(*n.right));
        return 0;
      },
      e.node());
}

}  // namespace

TEST_CASE("parse examples") {
  const Expr x = var(Var::X), y = var(Var::Y);
  const Expr two = num(2), one = num(1);
  const Expr kernel = bin(BinaryOp::Div, x,
                          bin(BinaryOp::Mul, bin(BinaryOp::Add, one, bin(BinaryOp::Pow, x, two)),
                              bin(BinaryOp::Add, bin(BinaryOp::Pow, y, two), bin(BinaryOp::Pow, x, two))));
  CHECK(parse("x/((1+x^2)*(y^2+x^2))") == kernel);

  const Expr lny = bin(BinaryOp::Div, Expr::call(Function::Ln, y), bin(BinaryOp::Sub, one, bin(BinaryOp::Pow, y, two)));
  CHECK(parse("ln(y)/(1-y^2)") == lny);
  CHECK(parse("  ln ( y ) / ( 1 - y ^ 2 ) ") == lny);

  CHECK(eval_text("2^3^2") == 512.0);
  CHECK(parse("pi") == num(std::numbers::pi));
}

TEST_CASE("precedence") {
  CHECK(eval_text("1+2*3") == 7.0);
  CHECK(eval_text("(1+2)*3") == 9.0);
  CHECK(eval_text("-2^2") == -4.0);
  CHECK(eval_text("8/4/2") == 1.0);
  CHECK(eval_text("8-4-2") == 2.0);
  CHECK(eval_text("2^-1") == 0.5);
  CHECK(eval_text("--3") == 3.0);
  CHECK(eval_text("1.5e2+.5") == 150.5);
  CHECK(eval_text("2*-3") == -6.0);
}

TEST_CASE("eval examples") {
  Bindings b;
  b.set(Var::X, 1.0).set(Var::Y, 1.0);
  CHECK(eval_text("x/((1+x^2)*(y^2+x^2))", b) == 0.25);

  Bindings half;
  half.set(Var::Y, 0.5);
  CHECK(std::abs(eval_text("ln(y)/(1-y^2)", half) - (-0.92419624074659375)) <= 1e-15);

  Bindings zero;
  zero.set(Var::Y, 0.0);
  CHECK(eval_error("ln(y)", zero) == EvalError::Kind::DomainError);
}

TEST_CASE("eval errors") {
  CHECK(eval_error("x+1") == EvalError::Kind::UnboundVariable);
  CHECK(eval_error("1/0") == EvalError::Kind::DivisionByZero);
  CHECK(eval_error("1/(1-1)") == EvalError::Kind::DivisionByZero);
  CHECK(eval_error("sqrt(-1)") == EvalError::Kind::DomainError);
  CHECK(eval_error("ln(-2)") == EvalError::Kind::DomainError);
  CHECK(eval_error("(-8)^(1/3)") == EvalError::Kind::DomainError);
  CHECK(eval_error("0^-1") == EvalError::Kind::DivisionByZero);
  // Overflow is allowed to reach infinity.
  CHECK(std::isinf(eval_text("exp(1000)")));
  CHECK(eval_text("abs(-3)+sqrt(4)+exp(0)") == 6.0);
}

TEST_CASE("parse errors point at the first offending token") {
  CHECK(error_position("1+*2") == 2);
  CHECK(error_position("x y") == 2);
  CHECK(error_position("foo(x)") == 0);
  CHECK(error_position("2*w") == 2);
  CHECK(error_position("(1+2") == 4);
  CHECK(error_position("ln x") == 3);
  CHECK(error_position("") == 0);
  CHECK(error_position("1+2)") == 3);
  CHECK(error_position("3 $ 4") == 2);
  CHECK(error_position("1e") == 1);

  try {
    parse("(1+2");
  } catch (const ParseError& e) {
    REQUIRE(e.expected().has_value());
    CHECK(e.expected()->find(')') != std::string::npos);
  }
}

TEST_CASE("tokens advance") {
  const std::vector<Token> tokens = tokenize("ln(y) / (1 - y^2)");
  REQUIRE(tokens.back().kind == Token::Kind::End);
  for (std::size_t i = 1; i < tokens.size(); ++i) CHECK(tokens[i].position > tokens[i - 1].position);
}

TEST_CASE("render examples") {
  CHECK(render(num(1)) == "1");
  CHECK(render(bin(BinaryOp::Div, var(Var::X), bin(BinaryOp::Add, num(1), bin(BinaryOp::Pow, var(Var::X), num(2))))) ==
        "(x/(1+(x^2)))");
  const Expr kernel = parse("x/((1+x^2)*(y^2+x^2))");
  CHECK(parse(render(kernel)) == kernel);
}

TEST_CASE("round trip on random trees") {
  std::mt19937_64 rng(1234);
  int checked = 0;
  while (checked < 200) {
    const Expr e = random_tree(rng, 6);
    REQUIRE(depth(e) <= 6);
    const std::string text = render(e);
    CAPTURE(text);
    CHECK(parse(text) == e);
    ++checked;
  }
}

TEST_CASE("variables") {
  CHECK(variables(parse("x+z")) == 0b101);
  CHECK(variables(parse("pi*2")) == 0);
}

TEST_CASE("partial-fraction identity") {
  const Expr lhs = parse("x/((1+x^2)*(y^2+x^2))");
  const Expr rhs = parse("(1/(1-y^2))*(x/(y^2+x^2)-x/(1+x^2))");
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  int checked = 0;
  while (checked < 100) {
    const double x = u(rng), y = u(rng);
    if (x == 0.0 || y == 0.0 || std::abs(y - 1.0) <= 1e-3) continue;
    Bindings b;
    b.set(Var::X, x).set(Var::Y, y);
    const double l = eval(lhs, b);
    const double r = eval(rhs, b);
    CAPTURE(x);
    CAPTURE(y);
    CHECK(std::abs(l - r) <= 1e-12 * std::max(1.0, std::abs(l)));
    ++checked;
  }
}
