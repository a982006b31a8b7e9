#pragma once

// Double-exponential quadrature on finite and semi-infinite intervals.
//
// Finite intervals use the tanh-sinh map x = c + h*tanh(pi/2 sinh t), and
// semi-infinite ones the exp-sinh map x = a + exp(pi/2 sinh t). Both push the
// abscissae toward the endpoints double-exponentially fast, so integrable
// endpoint singularities (ln x at 0) need no special weights, and no node is
// ever placed on an endpoint. Interior removable singularities are handled by
// listing them as split points: each piece is integrated separately and the
// split point becomes an (avoided) endpoint.
//
// Refinement is by level: level L uses step 2^-L in t and reuses every node
// of the coarser levels. The error estimate is |S_L - S_{L-1}|. It is an
// estimate, not a bound.

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "basel/summation.hpp"

namespace basel::quad {

class InvalidDomain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Finite {
  double lower;
  double upper;
  friend bool operator==(const Finite&, const Finite&) = default;
};

struct SemiInfinite {
  double lower;
  friend bool operator==(const SemiInfinite&, const SemiInfinite&) = default;
};

/// An interval [lower, upper] or [lower, inf) plus strictly interior,
/// strictly increasing split points. Validated on construction.
class IntegrationDomain {
 public:
  using Kind = std::variant<Finite, SemiInfinite>;

  IntegrationDomain(Kind kind, std::vector<double> split_points = {});

  static IntegrationDomain finite(double lower, double upper,
                                  std::vector<double> split_points = {}) {
    return {Finite{lower, upper}, std::move(split_points)};
  }
  static IntegrationDomain semi_infinite(double lower,
                                         std::vector<double> split_points = {}) {
    return {SemiInfinite{lower}, std::move(split_points)};
  }

  [[nodiscard]] const Kind& kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_finite() const noexcept {
    return std::holds_alternative<Finite>(kind_);
  }
  [[nodiscard]] double lower() const noexcept;
  /// +inf for semi-infinite domains.
  [[nodiscard]] double upper() const noexcept;
  [[nodiscard]] std::span<const double> split_points() const noexcept {
    return split_points_;
  }
  [[nodiscard]] bool contains_strictly(double x) const noexcept {
    return x > lower() && x < upper();
  }

  /// Same interval with extra split points merged in (sorted, validated).
  [[nodiscard]] IntegrationDomain with_extra_splits(std::span<const double> extra) const;

  friend bool operator==(const IntegrationDomain&, const IntegrationDomain&) = default;

 private:
  Kind kind_;
  std::vector<double> split_points_;
};

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_level = 12;
  long max_evals = 200000;

  /// Throws InvalidConfig.
  void validate() const;

  [[nodiscard]] double tolerance_for(double value) const noexcept {
    return std::max(abs_tol, rel_tol * std::abs(value));
  }

  friend bool operator==(const QuadConfig&, const QuadConfig&) = default;
};

inline constexpr int kMaxSupportedLevel = 20;

struct QuadResult {
  double value = 0.0;
  double error_estimate = std::numeric_limits<double>::infinity();
  long evaluations = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The integrand threw or returned a non-finite value at an interior node.
class EvaluationError : public QuadratureError {
 public:
  EvaluationError(double node, const std::string& what);
  [[nodiscard]] double node() const noexcept { return node_; }

 private:
  double node_;
};

/// Raised where a failed integration cannot be reported through
/// QuadResult::converged, i.e. an inner integral of an iterated 2-D rule.
class NonConvergence : public QuadratureError {
 public:
  NonConvergence(const std::string& what, QuadResult partial)
      : QuadratureError(what), partial_(partial) {}
  [[nodiscard]] const QuadResult& partial() const noexcept { return partial_; }

 private:
  QuadResult partial_;
};

struct Node {
  double x;
  double weight;
};

// Truncation of the transformed rules (see the header comment).
inline constexpr double kMinWeight = 1e-300;
inline constexpr double kMinEndpointOffset = 1e-300;
inline constexpr double kMaxSemiInfiniteOffset = 1e100;
/// Outer nodes of an iterated integral stay at least this far from their
/// endpoints, so that squares of outer coordinates remain normal numbers and
/// inner rules can still resolve kernels whose scale is the outer coordinate.
inline constexpr double kOuterMinEndpointDistance = 1e-150;

namespace detail {

/// One abscissa of a canonical rule: `offset` is the distance from the
/// finite endpoint, `weight` the transformed weight (without the step h).
struct RuleEntry {
  double offset;
  double weight;
};

/// Tanh-sinh nodes on [-1, 1] that are new at `level`, t > 0 only (mirrored
/// on use); offset = 1 - tanh(pi/2 sinh t). The t = 0 centre node belongs to
/// level 0 and is not stored.
const std::vector<RuleEntry>& tanh_sinh_level(int level);

/// Exp-sinh nodes on [0, inf) that are new at `level`, both signs of t.
const std::vector<RuleEntry>& exp_sinh_level(int level);

inline constexpr double kHalfPi = 1.57079632679489661923;

template <typename F>
double call_integrand(F& f, double x) {
  double y;
  try {
    y = static_cast<double>(f(x));
  } catch (const QuadratureError&) {
    throw;
  } catch (const std::exception& e) {
    throw EvaluationError(x, e.what());
  }
  if (!std::isfinite(y)) throw EvaluationError(x, "integrand is not finite");
  return y;
}

/// Integrand that also receives the weight its value will carry in the sum
/// of the level that introduces it. Used by iterated integration to size the
/// inner tolerance of each outer node.
template <typename G>
struct Weighted {
  G g;
};

template <typename T>
struct is_weighted : std::false_type {};
template <typename G>
struct is_weighted<Weighted<G>> : std::true_type {};

template <typename G>
double call_integrand(Weighted<G>& f, double x, double weight) {
  const double y = f.g(x, weight);
  if (!std::isfinite(y)) throw EvaluationError(x, "integrand is not finite");
  return y;
}

/// Calls visit(x, w) for every node new at `level` on [lower, upper] that
/// lies at least `min_distance` from both endpoints.
template <typename Visit>
void for_each_finite_node(double lower, double upper, int level, Visit&& visit, double min_distance = 0.0) {
  const double half = 0.5 * (upper - lower);
  if (level == 0) visit(lower + half, half * kHalfPi);
  for (const RuleEntry& e : tanh_sinh_level(level)) {
    const double d = half * e.offset;
    if (d < min_distance) continue;
    const double w = half * e.weight;
    const double left = lower + d;
    const double right = upper - d;
    if (left > lower && left < upper) visit(left, w);
    if (right < upper && right > lower) visit(right, w);
  }
}

template <typename Visit>
void for_each_semi_infinite_node(double lower, int level, Visit&& visit, double min_distance = 0.0) {
  for (const RuleEntry& e : exp_sinh_level(level)) {
    if (e.offset < min_distance) continue;
    const double x = lower + e.offset;
    if (x > lower) visit(x, e.weight);
  }
}

inline long finite_node_bound(int level) {
  return 2 * static_cast<long>(tanh_sinh_level(level).size()) + (level == 0 ? 1 : 0);
}

inline long semi_infinite_node_bound(int level) {
  return static_cast<long>(exp_sinh_level(level).size());
}

/// Level loop shared by both transforms. `for_level(level, sink)` feeds
/// (x, w) pairs; `bound(level)` gives an upper bound on their count.
template <typename F, typename ForLevel, typename Bound>
QuadResult refine(F& f, const QuadConfig& config, ForLevel&& for_level, Bound&& bound) {
  config.validate();
  CompensatedSum<double> sum;
  QuadResult result;
  double previous = 0.0;
  for (int level = 0; level <= config.max_level; ++level) {
    if (result.evaluations + bound(level) > config.max_evals) break;
    const double h = std::ldexp(1.0, -level);
    for_level(level, [&](double x, double w) {
      if constexpr (is_weighted<F>::value) {
        sum += w * call_integrand(f, x, w * h);
      } else {
        sum += w * call_integrand(f, x);
      }
      ++result.evaluations;
    });
    const double estimate = std::ldexp(sum.value(), -level);
    if (level > 0) {
      result.value = estimate;
      result.error_estimate = std::abs(estimate - previous);
      if (level >= 3 && result.error_estimate <= config.tolerance_for(estimate)) {
        result.converged = true;
        return result;
      }
    } else {
      result.value = estimate;
    }
    previous = estimate;
  }
  return result;
}

}  // namespace detail

/// Nodes (with weights for step 1) that are new at `level` on [lower, upper].
std::vector<Node> finite_nodes(double lower, double upper, int level);
/// Nodes that are new at `level` on [lower, inf).
std::vector<Node> semi_infinite_nodes(double lower, int level);

namespace detail {

template <typename F>
QuadResult finite_rule(F& f, double lower, double upper, const QuadConfig& config, double min_distance) {
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw InvalidDomain("integrate_finite requires finite lower < upper");
  }
  return refine(
      f, config,
      [&](int level, auto&& sink) { for_each_finite_node(lower, upper, level, sink, min_distance); },
      finite_node_bound);
}

template <typename F>
QuadResult semi_infinite_rule(F& f, double lower, const QuadConfig& config, double min_distance) {
  if (!std::isfinite(lower)) {
    throw InvalidDomain("integrate_semi_infinite requires a finite lower bound");
  }
  return refine(
      f, config,
      [&](int level, auto&& sink) { for_each_semi_infinite_node(lower, level, sink, min_distance); },
      semi_infinite_node_bound);
}

template <typename F>
QuadResult piecewise(F& f, const IntegrationDomain& domain, const QuadConfig& config, double min_distance) {
  std::vector<double> cuts;
  cuts.reserve(domain.split_points().size() + 2);
  cuts.push_back(domain.lower());
  cuts.insert(cuts.end(), domain.split_points().begin(), domain.split_points().end());
  cuts.push_back(domain.upper());

  CompensatedSum<double> value;
  double error_sq = 0.0;
  QuadResult total{0.0, 0.0, 0, true};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const QuadResult piece = std::isinf(cuts[i + 1])
                                 ? semi_infinite_rule(f, cuts[i], config, min_distance)
                                 : finite_rule(f, cuts[i], cuts[i + 1], config, min_distance);
    value += piece.value;
    error_sq += piece.error_estimate * piece.error_estimate;
    total.evaluations += piece.evaluations;
    total.converged = total.converged && piece.converged;
  }
  total.value = value.value();
  total.error_estimate = std::sqrt(error_sq);
  return total;
}

}  // namespace detail

/// Tanh-sinh integral of f over [lower, upper].
template <typename F>
QuadResult integrate_finite(F&& f, double lower, double upper, const QuadConfig& config = {}) {
  return detail::finite_rule(f, lower, upper, config, 0.0);
}

/// Exp-sinh integral of f over [lower, inf). f must decay integrably.
template <typename F>
QuadResult integrate_semi_infinite(F&& f, double lower, const QuadConfig& config = {}) {
  return detail::semi_infinite_rule(f, lower, config, 0.0);
}

/// Integrates piecewise between split points and sums the pieces. Error
/// estimates combine in root-sum-square; converged only if every piece did.
template <typename F>
QuadResult integrate(F&& f, const IntegrationDomain& domain, const QuadConfig& config = {}) {
  return detail::piecewise(f, domain, config, 0.0);
}

/// S_0 .. S_max_level of the tanh-sinh rule on [lower, upper] with no
/// convergence test. Used to study refinement behaviour.
template <typename F>
std::vector<double> finite_level_sums(F&& f, double lower, double upper, int max_level) {
  if (!(lower < upper)) throw InvalidDomain("finite_level_sums requires lower < upper");
  if (max_level < 0 || max_level > kMaxSupportedLevel) {
    throw InvalidConfig("finite_level_sums: level out of range");
  }
  std::vector<double> sums;
  CompensatedSum<double> sum;
  for (int level = 0; level <= max_level; ++level) {
    detail::for_each_finite_node(lower, upper, level, [&](double x, double w) {
      sum += w * detail::call_integrand(f, x);
    });
    sums.push_back(std::ldexp(sum.value(), -level));
  }
  return sums;
}

}  // namespace basel::quad
