#include "basel/ledger.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/core.h>

#include "basel/summation.hpp"

namespace basel::ledger {

bool operator==(const LinearCombo& a, const LinearCombo& b) {
  return std::equal(a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
                    [](const ComboTerm& x, const ComboTerm& y) {
                      return x.coefficient == y.coefficient && *x.quantity == *y.quantity;
                    });
}

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::Passed: return "passed";
    case Outcome::Mismatch: return "mismatch";
    case Outcome::NonConvergence: return "non-convergence";
    case Outcome::EvaluationError: return "evaluation-error";
  }
  return "?";
}

bool Report::any_non_convergence() const {
  return std::any_of(results.begin(), results.end(),
                     [](const ClaimResult& r) { return r.outcome == Outcome::NonConvergence; });
}

namespace {

using expr::Var;

constexpr std::uint8_t bit(Var v) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(v)); }

std::string mask_names(std::uint8_t mask) {
  std::string out;
  for (const Var v : {Var::X, Var::Y, Var::Z}) {
    if (mask & bit(v)) {
      if (!out.empty()) out += ", ";
      out += expr::var_name(v);
    }
  }
  return out;
}

void check_vars(const expr::Expr& e, std::uint8_t allowed, std::string_view what) {
  const std::uint8_t extra = static_cast<std::uint8_t>(expr::variables(e) & ~allowed);
  if (extra != 0) {
    throw InvalidClaim(fmt::format("{} references undeclared variable(s) {}", what, mask_names(extra)));
  }
}

void validate_quantity(const Quantity& q, std::uint8_t params, int combo_depth) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Integral1D>) {
          if (params & bit(v.variable)) throw InvalidClaim("integration variable is also a claim parameter");
          check_vars(v.integrand, params | bit(v.variable), "1-D integrand");
        } else if constexpr (std::is_same_v<T, Integral2D>) {
          if (v.outer_variable == v.inner_variable) throw InvalidClaim("2-D integral needs two distinct variables");
          const std::uint8_t own = bit(v.outer_variable) | bit(v.inner_variable);
          if (params & own) throw InvalidClaim("integration variable is also a claim parameter");
          check_vars(v.integrand, params | own, "2-D integrand");
        } else if constexpr (std::is_same_v<T, SeriesSum>) {
          v.spec.validate();
          if (!std::isfinite(v.scale)) throw InvalidClaim("series scale must be finite");
        } else if constexpr (std::is_same_v<T, Moment>) {
          check_vars(v.k, params, "moment index");
          check_vars(v.p, params, "moment power");
        } else if constexpr (std::is_same_v<T, ClosedForm>) {
          check_vars(v.expression, params, "closed form");
        } else if constexpr (std::is_same_v<T, LinearCombo>) {
          if (v.terms.empty()) throw InvalidClaim("linear combination must not be empty");
          if (combo_depth >= 2) throw InvalidClaim("linear combinations nest at most two deep");
          for (const ComboTerm& t : v.terms) {
            if (!t.quantity) throw InvalidClaim("linear combination term without quantity");
            if (!std::isfinite(t.coefficient)) throw InvalidClaim("combination coefficient must be finite");
            validate_quantity(*t.quantity, params, combo_depth + 1);
          }
        }
      },
      q.value);
}

struct Evaluation {
  double value = 0.0;
  long evaluations = 0;
  bool converged = true;
  std::string note;
};

class Evaluator {
 public:
  Evaluator(const quad::QuadConfig& config, double series_tol, const expr::Bindings& params)
      : config_(config), series_tol_(series_tol), params_(params) {}

  Evaluation operator()(const Quantity& q) const {
    return std::visit([&](const auto& v) { return evaluate(v); }, q.value);
  }

 private:
  static Evaluation from(const quad::QuadResult& r, std::string_view what) {
    Evaluation e{r.value, r.evaluations, r.converged, {}};
    if (!r.converged) {
      e.note = fmt::format("{} did not converge (estimate {:.3e} after {} evaluations)", what, r.error_estimate,
                           r.evaluations);
    }
    return e;
  }

  Evaluation evaluate(const Integral1D& q) const {
    auto f = [&](double t) {
      expr::Bindings b = params_;
      b.set(q.variable, t);
      return expr::eval(q.integrand, b);
    };
    return from(quad::integrate(f, q.domain, config_), "1-D integral");
  }

  Evaluation evaluate(const Integral2D& q) const {
    auto f = [&](double outer, double inner) {
      expr::Bindings b = params_;
      b.set(q.outer_variable, outer);
      b.set(q.inner_variable, inner);
      return expr::eval(q.integrand, b);
    };
    const quad::ProductDomain domain{q.outer_domain, q.inner_domain, {}};
    return from(quad::integrate_iterated(f, domain, q.order, config_), "2-D integral");
  }

  Evaluation evaluate(const SeriesSum& q) const {
    const series::SeriesResult r = series::sum_series(q.spec, series_tol_);
    return {q.scale * r.value, r.terms_used, true, {}};
  }

  Evaluation evaluate(const Zeta2&) const {
    const series::SeriesResult r = series::sum_series({series::Family::OddPower, 2}, series_tol_);
    return {series::zeta2_from_odd(r.value), r.terms_used, true, {}};
  }

  Evaluation evaluate(const Moment& q) const {
    const double k = expr::eval(q.k, params_);
    const double p = expr::eval(q.p, params_);
    if (k != std::floor(k) || p != std::floor(p) || std::abs(k) > 1e6 || std::abs(p) > 1e6) {
      throw InvalidClaim(fmt::format("moment arguments must be integers, got k = {}, p = {}", k, p));
    }
    return {series::moment_integral(static_cast<int>(k), static_cast<int>(p)), 0, true, {}};
  }

  Evaluation evaluate(const ClosedForm& q) const { return {expr::eval(q.expression, params_), 0, true, {}}; }

  Evaluation evaluate(const LinearCombo& q) const {
    CompensatedSum<double> sum;
    Evaluation total;
    for (const ComboTerm& t : q.terms) {
      const Evaluation e = (*this)(*t.quantity);
      sum += t.coefficient * e.value;
      total.evaluations += e.evaluations;
      if (!e.converged && total.converged) {
        total.converged = false;
        total.note = e.note;
      }
    }
    total.value = sum.value();
    return total;
  }

  const quad::QuadConfig& config_;
  double series_tol_;
  const expr::Bindings& params_;
};

std::string describe_instance(const expr::Bindings& b) {
  std::string out;
  for (const Var v : {Var::X, Var::Y, Var::Z}) {
    if (!b.is_bound(v)) continue;
    if (!out.empty()) out += ", ";
    out += fmt::format("{}={}", expr::var_name(v), b.get(v));
  }
  return out.empty() ? out : " [" + out + "]";
}

}  // namespace

void validate(const Claim& claim) {
  if (claim.id.empty()) throw InvalidClaim("claim id must not be empty");
  if (!(claim.tolerance > 0.0) || !std::isfinite(claim.tolerance)) {
    throw InvalidClaim(fmt::format("claim {}: tolerance must be positive", claim.id));
  }
  if (claim.rhs.empty()) throw InvalidClaim(fmt::format("claim {}: missing right-hand side", claim.id));
  const std::uint8_t params = claim.parameters.empty() ? 0 : claim.parameters.front().bound_mask();
  for (const expr::Bindings& b : claim.parameters) {
    if (b.bound_mask() != params) {
      throw InvalidClaim(fmt::format("claim {}: every parameter set must bind the same variables", claim.id));
    }
  }
  try {
    validate_quantity(claim.lhs, params, 0);
    for (const Quantity& q : claim.rhs) validate_quantity(q, params, 0);
  } catch (const std::invalid_argument& e) {
    throw InvalidClaim(fmt::format("claim {}: {}", claim.id, e.what()));
  }
}

ClaimResult run_claim(const Claim& claim, const quad::QuadConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ClaimResult result;
  result.claim_id = claim.id;
  const double series_tol = std::min(config.abs_tol > 0.0 ? config.abs_tol : 1e-10, claim.tolerance / 100.0);

  static const std::vector<expr::Bindings> kSingle{expr::Bindings{}};
  const std::vector<expr::Bindings>& instances = claim.parameters.empty() ? kSingle : claim.parameters;

  double worst = -1.0;
  bool converged = true;
  std::string worst_instance;
  try {
    validate(claim);
    for (const expr::Bindings& params : instances) {
      const Evaluator evaluate(config, series_tol, params);
      const Evaluation lhs = evaluate(claim.lhs);
      result.evaluations += lhs.evaluations;
      if (!lhs.converged && converged) {
        converged = false;
        result.reason = "lhs: " + lhs.note + describe_instance(params);
      }
      for (std::size_t i = 0; i < claim.rhs.size(); ++i) {
        const Evaluation rhs = evaluate(claim.rhs[i]);
        result.evaluations += rhs.evaluations;
        if (!rhs.converged && converged) {
          converged = false;
          result.reason = fmt::format("rhs #{}: {}{}", i + 1, rhs.note, describe_instance(params));
        }
        double diff = std::abs(lhs.value - rhs.value);
        if (std::isnan(diff)) diff = std::numeric_limits<double>::infinity();
        if (diff > worst) {
          worst = diff;
          result.lhs_value = lhs.value;
          result.rhs_value = rhs.value;
          worst_instance = fmt::format("rhs #{}{}", i + 1, describe_instance(params));
        }
      }
    }
    result.abs_diff = worst;
    if (!converged) {
      result.outcome = Outcome::NonConvergence;
    } else if (worst <= claim.tolerance) {
      result.outcome = Outcome::Passed;
    } else {
      result.outcome = Outcome::Mismatch;
      result.reason = fmt::format("|lhs - rhs| = {:.3e} exceeds tolerance {:.1e} at {}", worst, claim.tolerance,
                                  worst_instance);
    }
  } catch (const quad::NonConvergence& e) {
    result.outcome = Outcome::NonConvergence;
    result.reason = e.what();
  } catch (const series::ToleranceUnreachable& e) {
    result.outcome = Outcome::NonConvergence;
    result.reason = e.what();
  } catch (const std::exception& e) {
    result.outcome = Outcome::EvaluationError;
    result.reason = e.what();
  }
  if (result.outcome != Outcome::Passed && result.outcome != Outcome::Mismatch) {
    result.abs_diff = std::numeric_limits<double>::infinity();
  }
  result.passed = result.outcome == Outcome::Passed;
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

Report run_all(const std::vector<Claim>& claims, const quad::QuadConfig& config, int parallelism) {
  if (parallelism < 1) throw std::invalid_argument("parallelism must be at least 1");
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  Report report;
  report.config = config;
  report.results.resize(claims.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < claims.size(); i = next++) {
      report.results[i] = run_claim(claims[i], config);
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(parallelism), claims.size());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const ClaimResult& a, const ClaimResult& b) { return a.claim_id < b.claim_id; });
  report.all_passed = std::all_of(report.results.begin(), report.results.end(),
                                  [](const ClaimResult& r) { return r.passed; });
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

std::vector<Claim> builtin_claims() { return load_manifest(builtin_manifest()); }

}  // namespace basel::ledger
