#include "basel/quadrature.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include <fmt/core.h>

namespace basel::quad {

namespace {

void check_splits(double lower, double upper, std::span<const double> splits) {
  double previous = lower;
  for (const double s : splits) {
    if (!std::isfinite(s) || !(s > lower && s < upper)) {
      throw InvalidDomain(fmt::format("split point {} is not strictly inside ({}, {})", s, lower, upper));
    }
    if (!(s > previous)) {
      throw InvalidDomain(fmt::format("split points must be strictly increasing (at {})", s));
    }
    previous = s;
  }
}

constexpr double kHalfPi = detail::kHalfPi;

std::vector<detail::RuleEntry> build_tanh_sinh(int level) {
  std::vector<detail::RuleEntry> entries;
  const double h = std::ldexp(1.0, -level);
  // Level 0 holds t = 1, 2, ...; later levels hold the odd multiples of h.
  const long stride = level == 0 ? 1 : 2;
  for (long j = 1;; j += stride) {
    const double t = static_cast<double>(j) * h;
    const double u = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * u);
    const double offset = 2.0 * e / (1.0 + e);
    const double weight = kHalfPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (offset < kMinEndpointOffset || weight < kMinWeight) break;
    entries.push_back({offset, weight});
  }
  return entries;
}

std::vector<detail::RuleEntry> build_exp_sinh(int level) {
  std::vector<detail::RuleEntry> entries;
  const double h = std::ldexp(1.0, -level);
  if (level == 0) entries.push_back({1.0, kHalfPi});
  const long stride = level == 0 ? 1 : 2;
  // Positive t runs toward infinity, negative t toward the finite endpoint.
  for (const int sign : {1, -1}) {
    for (long j = 1;; j += stride) {
      const double t = sign * static_cast<double>(j) * h;
      const double offset = std::exp(kHalfPi * std::sinh(t));
      const double weight = kHalfPi * std::cosh(t) * offset;
      if (offset > kMaxSemiInfiniteOffset || offset < kMinEndpointOffset || weight < kMinWeight) {
        break;
      }
      entries.push_back({offset, weight});
    }
  }
  return entries;
}

template <auto Build>
const std::vector<detail::RuleEntry>& cached_level(int level) {
  static std::array<std::once_flag, kMaxSupportedLevel + 1> once;
  static std::array<std::vector<detail::RuleEntry>, kMaxSupportedLevel + 1> tables;
  if (level < 0 || level > kMaxSupportedLevel) {
    throw InvalidConfig(fmt::format("refinement level {} outside [0, {}]", level, kMaxSupportedLevel));
  }
  const auto index = static_cast<std::size_t>(level);
  std::call_once(once[index], [&] { tables[index] = Build(level); });
  return tables[index];
}

}  // namespace

IntegrationDomain::IntegrationDomain(Kind kind, std::vector<double> split_points)
    : kind_(kind), split_points_(std::move(split_points)) {
  if (const auto* f = std::get_if<Finite>(&kind_)) {
    if (!std::isfinite(f->lower) || !std::isfinite(f->upper) || !(f->lower < f->upper)) {
      throw InvalidDomain(fmt::format("finite domain requires lower < upper, got [{}, {}]", f->lower, f->upper));
    }
  } else if (!std::isfinite(std::get<SemiInfinite>(kind_).lower)) {
    throw InvalidDomain("semi-infinite domain requires a finite lower bound");
  }
  check_splits(lower(), upper(), split_points_);
}

double IntegrationDomain::lower() const noexcept {
  return std::visit([](const auto& k) { return k.lower; }, kind_);
}

double IntegrationDomain::upper() const noexcept {
  if (const auto* f = std::get_if<Finite>(&kind_)) return f->upper;
  return std::numeric_limits<double>::infinity();
}

IntegrationDomain IntegrationDomain::with_extra_splits(std::span<const double> extra) const {
  std::vector<double> merged(split_points_.begin(), split_points_.end());
  merged.insert(merged.end(), extra.begin(), extra.end());
  std::sort(merged.begin(), merged.end());
  return {kind_, std::move(merged)};
}

void QuadConfig::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) throw InvalidConfig("tolerances must be non-negative");
  if (!(abs_tol > 0.0 || rel_tol > 0.0)) throw InvalidConfig("one of abs_tol, rel_tol must be positive");
  if (max_level < 3 || max_level > kMaxSupportedLevel) {
    throw InvalidConfig(fmt::format("max_level must lie in [3, {}]", kMaxSupportedLevel));
  }
  if (max_evals < 100) throw InvalidConfig("max_evals must be at least 100");
}

EvaluationError::EvaluationError(double node, const std::string& what)
    : QuadratureError(fmt::format("integrand failed at node {}: {}", node, what)), node_(node) {}

namespace detail {

const std::vector<RuleEntry>& tanh_sinh_level(int level) {
  return cached_level<build_tanh_sinh>(level);
}

const std::vector<RuleEntry>& exp_sinh_level(int level) {
  return cached_level<build_exp_sinh>(level);
}

}  // namespace detail

std::vector<Node> finite_nodes(double lower, double upper, int level) {
  if (!(lower < upper)) throw InvalidDomain("finite_nodes requires lower < upper");
  std::vector<Node> nodes;
  detail::for_each_finite_node(lower, upper, level, [&](double x, double w) { nodes.push_back({x, w}); });
  return nodes;
}

std::vector<Node> semi_infinite_nodes(double lower, int level) {
  std::vector<Node> nodes;
  detail::for_each_semi_infinite_node(lower, level, [&](double x, double w) { nodes.push_back({x, w}); });
  return nodes;
}

}  // namespace basel::quad
