#pragma once

// Identities as data. A Claim pairs a left-hand Quantity with one or more
// right-hand Quantities; running it evaluates every side numerically and
// compares. Parameterised claims repeat the comparison for each binding set
// and report the worst instance.

#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "basel/expr.hpp"
#include "basel/quad2d.hpp"
#include "basel/quadrature.hpp"
#include "basel/series.hpp"

namespace basel::ledger {

struct Quantity;

struct Integral1D {
  expr::Expr integrand;
  expr::Var variable;
  quad::IntegrationDomain domain;
  friend bool operator==(const Integral1D&, const Integral1D&) = default;
};

struct Integral2D {
  expr::Expr integrand;
  expr::Var outer_variable;
  expr::Var inner_variable;
  quad::IntegrationDomain outer_domain;
  quad::IntegrationDomain inner_domain;
  quad::Order order = quad::Order::InnerFirst;
  friend bool operator==(const Integral2D&, const Integral2D&) = default;
};

struct SeriesSum {
  series::SeriesSpec spec;
  double scale = 1.0;
  friend bool operator==(const SeriesSum&, const SeriesSum&) = default;
};

/// zeta(2) through zeta2_from_odd applied to the odd-square series.
struct Zeta2 {
  friend bool operator==(const Zeta2&, const Zeta2&) = default;
};

/// moment_integral(k, p) with k and p given as (parameter) expressions.
struct Moment {
  expr::Expr k;
  expr::Expr p;
  friend bool operator==(const Moment&, const Moment&) = default;
};

/// Constants and claim parameters only.
struct ClosedForm {
  expr::Expr expression;
  friend bool operator==(const ClosedForm&, const ClosedForm&) = default;
};

struct ComboTerm {
  double coefficient;
  std::shared_ptr<const Quantity> quantity;
};

struct LinearCombo {
  std::vector<ComboTerm> terms;
  friend bool operator==(const LinearCombo& a, const LinearCombo& b);
};

struct Quantity {
  std::variant<ClosedForm, Integral1D, Integral2D, SeriesSum, Zeta2, Moment, LinearCombo> value;
  friend bool operator==(const Quantity&, const Quantity&) = default;
};

struct Claim {
  std::string id;
  std::string description;
  Quantity lhs;
  std::vector<Quantity> rhs;
  double tolerance = 1e-8;
  std::string citation;
  /// Each entry binds the claim's parameter variables; empty means one
  /// unparameterised instance.
  std::vector<expr::Bindings> parameters;

  friend bool operator==(const Claim&, const Claim&) = default;
};

class InvalidClaim : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checks variable usage, combo depth, parameter consistency and tolerance.
/// Throws InvalidClaim.
void validate(const Claim& claim);

enum class Outcome { Passed, Mismatch, NonConvergence, EvaluationError };
std::string_view to_string(Outcome outcome) noexcept;

struct ClaimResult {
  std::string claim_id;
  double lhs_value = 0.0;
  double rhs_value = 0.0;
  double abs_diff = 0.0;
  bool passed = false;
  long evaluations = 0;
  std::chrono::nanoseconds elapsed{0};
  Outcome outcome = Outcome::Mismatch;
  /// Empty when passed; otherwise what went wrong and at which instance.
  std::string reason;
};

struct Report {
  std::vector<ClaimResult> results;
  bool all_passed = true;
  quad::QuadConfig config;
  std::chrono::nanoseconds elapsed{0};

  [[nodiscard]] bool any_non_convergence() const;
};

/// The catalog of identities from the odd-square derivation and its
/// extensions, parsed from the embedded manifest.
std::vector<Claim> builtin_claims();
std::string_view builtin_manifest();

ClaimResult run_claim(const Claim& claim, const quad::QuadConfig& config = {});

/// Results are ordered by claim id and do not depend on `parallelism`.
Report run_all(const std::vector<Claim>& claims, const quad::QuadConfig& config = {}, int parallelism = 1);

class ManifestError : public std::runtime_error {
 public:
  enum class Kind { Syntax, DuplicateId, InvalidClaim };
  ManifestError(Kind kind, std::size_t line, std::string message,
                std::optional<std::size_t> expression_position = {});

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  /// 1-based line number.
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  /// Offset inside the offending expression, for expression parse errors.
  [[nodiscard]] const std::optional<std::size_t>& expression_position() const noexcept {
    return expression_position_;
  }

 private:
  Kind kind_;
  std::size_t line_;
  std::optional<std::size_t> expression_position_;
};

std::vector<Claim> load_manifest(std::string_view text);
std::string render_manifest(const std::vector<Claim>& claims);

}  // namespace basel::ledger
