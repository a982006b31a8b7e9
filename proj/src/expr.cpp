#include "basel/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

namespace basel::expr {

char var_name(Var v) noexcept {
  switch (v) {
    case Var::X: return 'x';
    case Var::Y: return 'y';
    case Var::Z: return 'z';
  }
  return '?';
}

std::optional<Var> var_from_name(std::string_view name) noexcept {
  if (name == "x") return Var::X;
  if (name == "y") return Var::Y;
  if (name == "z") return Var::Z;
  return std::nullopt;
}

std::string_view function_name(Function f) noexcept {
  switch (f) {
    case Function::Ln: return "ln";
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
    case Function::Abs: return "abs";
  }
  return "?";
}

namespace {

std::optional<Function> function_from_name(std::string_view name) noexcept {
  if (name == "ln") return Function::Ln;
  if (name == "exp") return Function::Exp;
  if (name == "sqrt") return Function::Sqrt;
  if (name == "abs") return Function::Abs;
  return std::nullopt;
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::Number: return fmt::format("number '{}'", t.text);
    case Token::Kind::Identifier: return fmt::format("identifier '{}'", t.text);
    default: return fmt::format("'{}'", t.text);
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Expr parse_all() {
    Expr e = sum();
    if (peek().kind != Token::Kind::End) {
      throw ParseError(peek().position, fmt::format("unexpected {}", describe(peek())), "operator or end of input");
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Token::Kind k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Token::Kind k, const char* what) {
    if (!accept(k)) throw ParseError(peek().position, fmt::format("expected {}, found {}", what, describe(peek())), what);
  }

  Expr sum() {
    Expr left = product();
    for (;;) {
      if (accept(Token::Kind::Plus)) {
        left = Expr::binary(BinaryOp::Add, left, product());
      } else if (accept(Token::Kind::Minus)) {
        left = Expr::binary(BinaryOp::Sub, left, product());
      } else {
        return left;
      }
    }
  }

  Expr product() {
    Expr left = unary();
    for (;;) {
      if (accept(Token::Kind::Star)) {
        left = Expr::binary(BinaryOp::Mul, left, unary());
      } else if (accept(Token::Kind::Slash)) {
        left = Expr::binary(BinaryOp::Div, left, unary());
      } else {
        return left;
      }
    }
  }

  Expr unary() {
    if (accept(Token::Kind::Minus)) return Expr::negate(unary());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept(Token::Kind::Caret)) return Expr::binary(BinaryOp::Pow, base, unary());
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        advance();
        double value = 0.0;
        const auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || end != t.text.data() + t.text.size() || !std::isfinite(value)) {
          throw ParseError(t.position, fmt::format("number '{}' is out of range", t.text));
        }
        return Expr::constant(value);
      }
      case Token::Kind::Identifier: {
        advance();
        if (t.text == "pi") return Expr::constant(std::numbers::pi);
        if (auto v = var_from_name(t.text)) return Expr::variable(*v);
        if (auto f = function_from_name(t.text)) {
          expect(Token::Kind::LParen, "'('");
          Expr argument = sum();
          expect(Token::Kind::RParen, "')'");
          return Expr::call(*f, argument);
        }
        throw ParseError(t.position, fmt::format("unknown identifier '{}'", t.text),
                         "x, y, z, pi, ln, exp, sqrt or abs");
      }
      case Token::Kind::LParen: {
        advance();
        Expr inner = sum();
        expect(Token::Kind::RParen, "')'");
        return inner;
      }
      default:
        throw ParseError(t.position, fmt::format("unexpected {}", describe(t)), "number, variable, function or '('");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain_error(const std::string& what) { throw EvalError(EvalError::Kind::DomainError, what); }

double apply(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
      if (b == 0.0) throw EvalError(EvalError::Kind::DivisionByZero, fmt::format("division by zero ({} / 0)", a));
      return a / b;
    case BinaryOp::Pow: {
      if (a == 0.0 && b < 0.0) {
        throw EvalError(EvalError::Kind::DivisionByZero, fmt::format("0 raised to negative power {}", b));
      }
      const double r = std::pow(a, b);
      if (std::isnan(r) && !std::isnan(a) && !std::isnan(b)) domain_error(fmt::format("{}^{} has no real value", a, b));
      return r;
    }
  }
  return 0.0;
}

double apply(Function f, double a) {
  switch (f) {
    case Function::Ln:
      if (!(a > 0.0)) domain_error(fmt::format("ln of non-positive value {}", a));
      return std::log(a);
    case Function::Exp: return std::exp(a);
    case Function::Sqrt:
      if (a < 0.0) domain_error(fmt::format("sqrt of negative value {}", a));
      return std::sqrt(a);
    case Function::Abs: return std::abs(a);
  }
  return 0.0;
}

void render_into(const Expr& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          if (n.value == std::numbers::pi) {
            out += "pi";
          } else {
            char buf[64];
            const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
            out.append(buf, end);
          }
        } else if constexpr (std::is_same_v<T, VarRef>) {
          out += var_name(n.var);
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += "(-";
          render_into(*n.child, out);
          out += ')';
        } else if constexpr (std::is_same_v<T, Binary>) {
          static constexpr char kSymbol[] = {'+', '-', '*', '/', '^'};
          out += '(';
          render_into(*n.left, out);
          out += kSymbol[static_cast<int>(n.op)];
          render_into(*n.right, out);
          out += ')';
        } else {
          out += function_name(n.function);
          out += '(';
          render_into(*n.argument, out);
          out += ')';
        }
      },
      e.node());
}

}  // namespace

ParseError::ParseError(std::size_t position, std::string message, std::optional<std::string> expected)
    : std::runtime_error(fmt::format("parse error at {}: {}", position, message)),
      position_(position),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (is_digit(c) || (c == '.' && i + 1 < text.size() && is_digit(text[i + 1]))) {
      while (i < text.size() && is_digit(text[i])) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && is_digit(text[i])) ++i;
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (j >= text.size() || !is_digit(text[j])) {
          throw ParseError(i, "malformed exponent in number", "digits after 'e'");
        }
        while (j < text.size() && is_digit(text[j])) ++j;
        i = j;
      }
      tokens.push_back({Token::Kind::Number, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (is_alpha(c)) {
      while (i < text.size() && (is_alpha(text[i]) || is_digit(text[i]))) ++i;
      tokens.push_back({Token::Kind::Identifier, std::string(text.substr(start, i - start)), start});
      continue;
    }
    Token::Kind kind;
    switch (c) {
      case '+': kind = Token::Kind::Plus; break;
      case '-': kind = Token::Kind::Minus; break;
      case '*': kind = Token::Kind::Star; break;
      case '/': kind = Token::Kind::Slash; break;
      case '^': kind = Token::Kind::Caret; break;
      case '(': kind = Token::Kind::LParen; break;
      case ')': kind = Token::Kind::RParen; break;
      case ',': kind = Token::Kind::Comma; break;
      default: throw ParseError(start, fmt::format("unexpected character '{}'", c));
    }
    tokens.push_back({kind, std::string(1, c), start});
    ++i;
  }
  tokens.push_back({Token::Kind::End, "", text.size()});
  return tokens;
}

Expr Expr::constant(double value) { return Expr(Const{value}); }
Expr Expr::variable(Var v) { return Expr(VarRef{v}); }
Expr Expr::negate(Expr child) { return Expr(Negate{std::make_shared<const Expr>(std::move(child))}); }
Expr Expr::binary(BinaryOp op, Expr left, Expr right) {
  return Expr(Binary{op, std::make_shared<const Expr>(std::move(left)), std::make_shared<const Expr>(std::move(right))});
}
Expr Expr::call(Function f, Expr argument) {
  return Expr(Call{f, std::make_shared<const Expr>(std::move(argument))});
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& na) {
        using T = std::decay_t<decltype(na)>;
        const T& nb = std::get<T>(b.node());
        if constexpr (std::is_same_v<T, Const>) {
          return na.value == nb.value;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return na.var == nb.var;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return *na.child == *nb.child;
        } else if constexpr (std::is_same_v<T, Binary>) {
          return na.op == nb.op && *na.left == *nb.left && *na.right == *nb.right;
        } else {
          return na.function == nb.function && *na.argument == *nb.argument;
        }
      },
      a.node());
}

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

std::string_view to_string(EvalError::Kind kind) noexcept {
  switch (kind) {
    case EvalError::Kind::UnboundVariable: return "UnboundVariable";
    case EvalError::Kind::DomainError: return "DomainError";
    case EvalError::Kind::DivisionByZero: return "DivisionByZero";
  }
  return "?";
}

double eval(const Expr& e, const Bindings& bindings) {
  return std::visit(
      [&](const auto& n) -> double {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          if (!bindings.is_bound(n.var)) {
            throw EvalError(EvalError::Kind::UnboundVariable, fmt::format("variable '{}' is not bound", var_name(n.var)));
          }
          return bindings.get(n.var);
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval(*n.child, bindings);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const double a = eval(*n.left, bindings);
          return apply(n.op, a, eval(*n.right, bindings));
        } else {
          return apply(n.function, eval(*n.argument, bindings));
        }
      },
      e.node());
}

std::string render(const Expr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

std::uint8_t variables(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::uint8_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Const>) {
          return 0;
        } else if constexpr (std::is_same_v<T, VarRef>) {
          return static_cast<std::uint8_t>(1u << static_cast<unsigned>(n.var));
        } else if constexpr (std::is_same_v<T, Negate>) {
          return variables(*n.child);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return variables(*n.left) | variables(*n.right);
        } else {
          return variables(*n.argument);
        }
      },
      e.node());
}

}  // namespace basel::expr
