#pragma once

// Integrand expression language.
//
// Grammar (version 1), lowest to highest precedence:
//
//   sum     := product (('+' | '-') product)*          left-assoc
//   product := unary (('*' | '/') unary)*              left-assoc
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?                       right-assoc
//   atom    := number | 'x' | 'y' | 'z' | 'pi'
//            | ('ln' | 'exp' | 'sqrt' | 'abs') '(' sum ')'
//            | '(' sum ')'
//   number  := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]  |  '.' digits [...]
//
// So "-2^2" is -(2^2) and "2^3^2" is 2^(3^2). There is no implicit
// multiplication: "x y" is an error.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace basel::expr {

enum class Var : std::uint8_t { X = 0, Y = 1, Z = 2 };
enum class BinaryOp : std::uint8_t { Add, Sub, Mul, Div, Pow };
enum class Function : std::uint8_t { Ln, Exp, Sqrt, Abs };

char var_name(Var v) noexcept;
std::optional<Var> var_from_name(std::string_view name) noexcept;
std::string_view function_name(Function f) noexcept;

struct Token {
  enum class Kind { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };
  Kind kind;
  std::string text;
  std::size_t position;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, std::string message, std::optional<std::string> expected = {});

  [[nodiscard]] std::size_t position() const noexcept { return position_; }
  [[nodiscard]] const std::string& message() const noexcept { return message_; }
  [[nodiscard]] const std::optional<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string message_;
  std::optional<std::string> expected_;
};

/// Splits `text` into tokens, ending with a Kind::End token at text.size().
std::vector<Token> tokenize(std::string_view text);

class Expr;

struct Const {
  double value;
};
struct VarRef {
  Var var;
};
struct Negate {
  std::shared_ptr<const Expr> child;
};
struct Binary {
  BinaryOp op;
  std::shared_ptr<const Expr> left;
  std::shared_ptr<const Expr> right;
};
struct Call {
  Function function;
  std::shared_ptr<const Expr> argument;
};

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  using Node = std::variant<Const, VarRef, Negate, Binary, Call>;

  /// The constant 0.
  Expr() : Expr(Const{0.0}) {}

  static Expr constant(double value);
  static Expr variable(Var v);
  static Expr negate(Expr child);
  static Expr binary(BinaryOp op, Expr left, Expr right);
  static Expr call(Function f, Expr argument);

  [[nodiscard]] const Node& node() const noexcept { return *node_; }

  /// Structural equality; constants compare by exact value.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}
  std::shared_ptr<const Node> node_;
};

Expr parse(std::string_view text);

/// Values of x, y, z, any subset of which may be bound.
class Bindings {
 public:
  Bindings() = default;
  Bindings& set(Var v, double value) noexcept {
    values_[index(v)] = value;
    bound_ |= mask(v);
    return *this;
  }
  [[nodiscard]] bool is_bound(Var v) const noexcept { return (bound_ & mask(v)) != 0; }
  [[nodiscard]] double get(Var v) const noexcept { return values_[index(v)]; }
  [[nodiscard]] std::uint8_t bound_mask() const noexcept { return bound_; }

  friend bool operator==(const Bindings&, const Bindings&) = default;

 private:
  static constexpr std::size_t index(Var v) noexcept { return static_cast<std::size_t>(v); }
  static constexpr std::uint8_t mask(Var v) noexcept { return static_cast<std::uint8_t>(1u << index(v)); }
  std::array<double, 3> values_{};
  std::uint8_t bound_ = 0;
};

class EvalError : public std::runtime_error {
 public:
  enum class Kind { UnboundVariable, DomainError, DivisionByZero };
  EvalError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(EvalError::Kind kind) noexcept;

/// Real evaluation. Division by exact zero, ln of a non-positive value,
/// sqrt of a negative value and a real power with no real result raise
/// EvalError; overflow to +-inf is allowed.
double eval(const Expr& e, const Bindings& bindings);

/// Fully parenthesised canonical text; parse(render(e)) == e for every tree
/// the parser can produce (constants are finite and non-negative).
std::string render(const Expr& e);

/// Bit mask (1 << Var) of the variables referenced by e.
std::uint8_t variables(const Expr& e);

}  // namespace basel::expr
