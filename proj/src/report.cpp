#include "basel/report.hpp"

#include <cmath>

#include <fmt/core.h>
#include <json.hpp>

namespace basel::report {

namespace {

// JSON has no NaN/inf; non-finite values are written as null.
nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string to_json(const ledger::Report& report, bool include_timing) {
  nlohmann::ordered_json root;
  root["version"] = kJsonVersion;
  root["config"] = {
      {"abs_tol", report.config.abs_tol},
      {"rel_tol", report.config.rel_tol},
      {"max_level", report.config.max_level},
      {"max_evals", report.config.max_evals},
  };
  auto claims = nlohmann::ordered_json::array();
  for (const ledger::ClaimResult& r : report.results) {
    const double ms = include_timing ? std::chrono::duration<double, std::milli>(r.elapsed).count() : 0.0;
    nlohmann::ordered_json c;
    c["id"] = r.claim_id;
    c["lhs"] = number(r.lhs_value);
    c["rhs"] = number(r.rhs_value);
    c["abs_diff"] = number(r.abs_diff);
    c["passed"] = r.passed;
    c["evals"] = r.evaluations;
    c["ms"] = std::round(ms * 1000.0) / 1000.0;
    claims.push_back(std::move(c));
  }
  root["claims"] = std::move(claims);
  root["all_passed"] = report.all_passed;
  return root.dump(2) + "\n";
}

std::string to_table(const ledger::Report& report) {
  std::string out = fmt::format("{:<6}  {:>22}  {:>22}  {:>10}  {:<16}\n", "id", "lhs", "rhs", "|diff|", "status");
  out += std::string(6 + 2 + 22 + 2 + 22 + 2 + 10 + 2 + 16, '-') + "\n";
  std::size_t passed = 0;
  for (const ledger::ClaimResult& r : report.results) {
    if (r.passed) ++passed;
    out += fmt::format("{:<6}  {:>22.15g}  {:>22.15g}  {:>10.3e}  {:<16}\n", r.claim_id, r.lhs_value, r.rhs_value,
                       r.abs_diff, ledger::to_string(r.outcome));
  }
  out += fmt::format("{}/{} claims passed\n", passed, report.results.size());
  for (const ledger::ClaimResult& r : report.results) {
    if (!r.passed) out += fmt::format("  {}: {}\n", r.claim_id, r.reason);
  }
  return out;
}

}  // namespace basel::report
