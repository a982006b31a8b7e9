#pragma once

// Iterated integration over products of intervals, and the order-swap
// (Fubini) agreement check.

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <fmt/core.h>

#include "basel/quadrature.hpp"

namespace basel::quad {

struct ProductDomain {
  IntegrationDomain outer;
  IntegrationDomain inner;
  /// Extra inner split points as a function of the outer coordinate. Only
  /// consulted when the inner variable is integrated first.
  std::function<std::vector<double>(double)> inner_splits_depend_on_outer{};
};

/// InnerFirst: integral over outer of (integral over inner of f).
/// OuterFirst: the swapped order, integral over inner of (integral over outer of f).
enum class Order { InnerFirst, OuterFirst };

struct FubiniReport {
  double value_order_ab = std::numeric_limits<double>::quiet_NaN();
  double value_order_ba = std::numeric_limits<double>::quiet_NaN();
  double discrepancy = std::numeric_limits<double>::infinity();
  bool both_converged = false;
};

inline constexpr double kDefaultInnerTightening = 10.0;

/// Iterated quadrature of f(outer, inner) over `domain`.
///
/// Every node of the outer rule runs a full 1-D inner integration with both
/// tolerances divided by `inner_tightening`. An inner integral that misses its
/// tolerance aborts the whole computation with NonConvergence. The returned
/// evaluation count is the total number of integrand calls.
template <typename F>
QuadResult integrate_iterated(F&& f, const ProductDomain& domain, Order order,
                              const QuadConfig& config = {},
                              double inner_tightening = kDefaultInnerTightening) {
  config.validate();
  if (!(inner_tightening >= 1.0)) throw InvalidConfig("inner_tightening must be >= 1");
  QuadConfig inner_config = config;
  inner_config.abs_tol /= inner_tightening;
  inner_config.rel_tol /= inner_tightening;

  const bool inner_first = order == Order::InnerFirst;
  const IntegrationDomain& first = inner_first ? domain.inner : domain.outer;
  const IntegrationDomain& last = inner_first ? domain.outer : domain.inner;

  long total_evaluations = 0;
  auto partial = [&](double fixed, double outer_weight) {
    // An inner error e moves the outer sum by outer_weight * e, so heavy
    // outer nodes (far out on a semi-infinite range) get a tighter absolute
    // tolerance. The tightened config is the loosest tolerance ever used.
    QuadConfig node_config = inner_config;
    if (outer_weight > 1.0) node_config.abs_tol /= outer_weight;
    auto slice = [&](double moving) {
      return inner_first ? f(fixed, moving) : f(moving, fixed);
    };
    QuadResult r;
    if (inner_first && domain.inner_splits_depend_on_outer) {
      const std::vector<double> extra = domain.inner_splits_depend_on_outer(fixed);
      r = integrate(slice, first.with_extra_splits(extra), node_config);
    } else {
      r = integrate(slice, first, node_config);
    }
    total_evaluations += r.evaluations;
    if (!r.converged) {
      throw NonConvergence(
          fmt::format("inner integral did not converge at {} = {} (estimate {:.3e})",
                      inner_first ? "outer" : "inner", fixed, r.error_estimate),
          r);
    }
    return r.value;
  };

  detail::Weighted<decltype(partial)> weighted{partial};
  QuadResult result = detail::piecewise(weighted, last, config, kOuterMinEndpointDistance);
  result.evaluations = total_evaluations;
  return result;
}

/// Runs both integration orders. Non-convergence of either order is folded
/// into both_converged (with a NaN value for that order) instead of thrown.
template <typename F>
FubiniReport fubini_check(F&& f, const ProductDomain& domain, const QuadConfig& config = {}) {
  FubiniReport report;
  bool converged = true;
  auto run = [&](Order order) {
    try {
      const QuadResult r = integrate_iterated(f, domain, order, config);
      converged = converged && r.converged;
      return r.value;
    } catch (const NonConvergence&) {
      converged = false;
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  report.value_order_ab = run(Order::InnerFirst);
  report.value_order_ba = run(Order::OuterFirst);
  report.both_converged = converged;
  const double d = std::abs(report.value_order_ab - report.value_order_ba);
  report.discrepancy = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
  return report;
}

}  // namespace basel::quad
