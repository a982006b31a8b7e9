// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed here and never relaxed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "basel/cli.hpp"
#include "basel/expr.hpp"
#include "basel/ledger.hpp"
#include "basel/quad2d.hpp"
#include "basel/quadrature.hpp"
#include "basel/series.hpp"

namespace {

using namespace basel;
using Clock = std::chrono::steady_clock;
using std::numbers::pi;

// High-precision references (mpmath, 30 digits), rounded to double.
constexpr double kPiSq4 = 2.4674011002723395;
constexpr double kPiSq8 = 1.2337005501361697;
constexpr double kPiSq6 = 1.6449340668482264;
constexpr double kPiCube16 = 1.9378922925187387;
constexpr double kPi4Over32 = 3.0440340948125764;

int failures = 0;

void report(int number, bool pass, const std::string& what, const std::string& detail) {
  if (!pass) ++failures;
  fmt::print("{} {}: {} ({})\n", pass ? "PASS" : "FAIL", number, what, detail);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

const ledger::Claim& find(const std::vector<ledger::Claim>& claims, std::string_view id) {
  return *std::find_if(claims.begin(), claims.end(), [&](const ledger::Claim& c) { return c.id == id; });
}

double kernel(double x, double y) { return x / ((1.0 + x * x) * (y * y + x * x)); }

double lny_kernel(double y) { return std::log(y) / (1.0 - y * y); }

void criterion_1() {
  const quad::ProductDomain quadrant{quad::IntegrationDomain::semi_infinite(0.0),
                                     quad::IntegrationDomain::semi_infinite(0.0)};
  const auto start = Clock::now();
  const quad::FubiniReport f = quad::fubini_check(kernel, quadrant);
  const double elapsed = seconds_since(start);
  const bool pass = f.both_converged && std::abs(f.value_order_ab - kPiSq4) <= 1e-8 &&
                    std::abs(f.value_order_ba - kPiSq4) <= 1e-8 && f.discrepancy <= 1e-8 && elapsed <= 20.0;
  report(1, pass, "C-03 double integral = pi^2/4 in both orders",
         fmt::format("y-first err {:.2e}, x-first err {:.2e}, discrepancy {:.2e}, {:.2f} s",
                     f.value_order_ab - kPiSq4, f.value_order_ba - kPiSq4, f.discrepancy, elapsed));
}

void criterion_2() {
  const quad::QuadResult q = quad::integrate_finite(lny_kernel, 0.0, 1.0);
  const series::SeriesResult s = series::sum_series({series::Family::OddPower, 2}, 1e-12);
  const double quad_err = q.value + kPiSq8;
  const double series_err = s.value - kPiSq8;
  const double agreement = -q.value - s.value;
  const bool pass = q.converged && std::abs(quad_err) <= 1e-10 && std::abs(series_err) <= 1e-12 &&
                    std::abs(agreement) <= 1e-9;
  report(2, pass, "C-07/C-08 quadrature -pi^2/8 and odd-square series pi^2/8",
         fmt::format("quadrature err {:.2e}, series err {:.2e}, |quadrature + series| {:.2e}", quad_err,
                     series_err, agreement));
}

void criterion_3(const std::vector<ledger::Claim>& claims) {
  const ledger::ClaimResult r = ledger::run_claim(find(claims, "C-09"));
  const double err = r.lhs_value - kPiSq6;
  report(3, r.outcome == ledger::Outcome::Passed && std::abs(err) <= 1e-9, "C-09 zeta(2) = pi^2/6",
         fmt::format("zeta(2) err {:.2e}", err));
}

void criterion_4(const std::vector<ledger::Claim>& claims) {
  std::vector<std::string> failed;
  for (const char* id : {"C-10", "C-11", "C-12", "C-13", "C-14"}) {
    const ledger::Claim& c = find(claims, id);
    const ledger::ClaimResult r = ledger::run_claim(c);
    if (!(r.passed && r.abs_diff <= 1e-8)) failed.push_back(fmt::format("{} |diff| {:.3e}", id, r.abs_diff));
  }
  std::string detail = "all five within 1e-8";
  if (!failed.empty()) {
    detail = "failed:";
    for (const std::string& f : failed) detail += " " + f + ";";
    detail.pop_back();
  }
  report(4, failed.empty(), "C-10..C-14 squared-kernel chain at 1e-8 incl. J = pi^2/8 + pi/4", detail);
}

void criterion_5(const std::vector<ledger::Claim>& claims) {
  const ledger::ClaimResult r = ledger::run_claim(find(claims, "C-16"));
  const double err = r.lhs_value - kPiCube16;
  report(5, std::abs(err) <= 1e-9 && r.passed, "C-16 int_0^1 ln^2(y)/(1-y^2) dy = pi^3/16",
         fmt::format("integral {:.15f}, pi^3/16 {:.15f}, diff {:.3e}", r.lhs_value, kPiCube16, err));
}

void criterion_6() {
  const double lhs = pi * series::sum_series({series::Family::AlternatingOddPower, 3}, 1e-12).value;
  const double rhs = 3.0 * series::sum_series({series::Family::OddPower, 4}, 1e-12).value;
  const bool pass = std::abs(lhs - rhs) <= 1e-8 && std::abs(lhs - kPi4Over32) <= 1e-8 &&
                    std::abs(rhs - kPi4Over32) <= 1e-8;
  report(6, pass, "C-20 pi*beta(3) = 3*lambda(4)",
         fmt::format("lhs {:.12f}, rhs {:.12f}, |diff| {:.2e}", lhs, rhs, std::abs(lhs - rhs)));
}

expr::Expr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  std::uniform_real_distribution<double> value(0.0, 10.0);
  switch (pick(rng)) {
    case 0:
      return expr::Expr::constant(value(rng));
    case 1:
      return expr::Expr::variable(static_cast<expr::Var>(std::uniform_int_distribution<int>(0, 2)(rng)));
    case 2:
      return expr::Expr::negate(random_tree(rng, depth - 1));
    case 3:
      return expr::Expr::call(static_cast<expr::Function>(std::uniform_int_distribution<int>(0, 3)(rng)),
                              random_tree(rng, depth - 1));
    default:
      return expr::Expr::binary(static_cast<expr::BinaryOp>(std::uniform_int_distribution<int>(0, 4)(rng)),
                                random_tree(rng, depth - 1), random_tree(rng, depth - 1));
  }
}

void criterion_7() {
  std::mt19937_64 rng(2024);

  const expr::Expr lhs = expr::parse("x/((1+x^2)*(y^2+x^2))");
  const expr::Expr rhs = expr::parse("(1/(1-y^2))*(x/(y^2+x^2)-x/(1+x^2))");
  std::uniform_real_distribution<double> u(0.0, 10.0);
  double worst_pf = 0.0;
  for (int n = 0; n < 100;) {
    const double x = u(rng), y = u(rng);
    if (x == 0.0 || y == 0.0 || std::abs(y - 1.0) <= 1e-3) continue;
    expr::Bindings b;
    b.set(expr::Var::X, x).set(expr::Var::Y, y);
    const double l = expr::eval(lhs, b);
    worst_pf = std::max(worst_pf, std::abs(l - expr::eval(rhs, b)) / std::max(1.0, std::abs(l)));
    ++n;
  }

  double worst_moment = 0.0;
  for (int k = 0; k <= 10; ++k) {
    for (int p = 1; p <= 3; ++p) {
      const quad::QuadResult q = quad::integrate_finite(
          [&](double y) { return std::pow(y, 2 * k) * std::pow(std::log(y), p); }, 0.0, 1.0);
      worst_moment = std::max(worst_moment, std::abs(q.value - series::moment_integral(k, p)));
    }
  }

  int round_trip_failures = 0;
  for (int n = 0; n < 200; ++n) {
    const expr::Expr e = random_tree(rng, 6);
    if (!(expr::parse(expr::render(e)) == e)) ++round_trip_failures;
  }

  const quad::QuadResult upper = quad::integrate_semi_infinite(lny_kernel, 1.0);
  const quad::QuadResult lower = quad::integrate_finite(lny_kernel, 0.0, 1.0);
  const double sym = std::abs(upper.value - lower.value);
  const double sym_budget = std::max(upper.error_estimate + lower.error_estimate, 4 * 2.2e-16);

  const bool pass = worst_pf <= 1e-12 && worst_moment <= 1e-10 && round_trip_failures == 0 && sym <= sym_budget;
  report(7, pass, "property suites",
         fmt::format("partial fractions {:.1e} rel, moments {:.1e}, round-trip failures {}/200, "
                     "C-06 |diff| {:.1e} vs {:.1e}",
                     worst_pf, worst_moment, round_trip_failures, sym, sym_budget));
}

void criterion_8() {
  auto verify = [](const std::string& jobs) {
    std::ostringstream out, err;
    const int code = cli::run({"basel", "verify", "--json", "--no-timing", "--jobs", jobs}, out, err);
    return std::pair{code, out.str()};
  };
  const auto start = Clock::now();
  const auto [code, json_one] = verify("1");
  const double elapsed = seconds_since(start);
  const auto [code_four, json_four] = verify("4");

  const auto report_all = ledger::run_all(ledger::builtin_claims());
  const long passed = std::count_if(report_all.results.begin(), report_all.results.end(),
                                    [](const ledger::ClaimResult& r) { return r.passed; });
  const bool deterministic = json_one == json_four && code == code_four;
  const bool pass = code == cli::kExitOk && passed == 21 && report_all.results.size() == 21 && deterministic &&
                    elapsed < 60.0;
  report(8, pass, "full verify: 21/21, deterministic JSON, < 60 s",
         fmt::format("{}/{} passed, exit {}, JSON jobs 1 vs 4 {}, {:.2f} s", passed, report_all.results.size(),
                     code, deterministic ? "identical" : "DIFFERENT", elapsed));
}

}  // namespace

int main() {
  const std::vector<ledger::Claim> claims = ledger::builtin_claims();
  criterion_1();
  criterion_2();
  criterion_3(claims);
  criterion_4(claims);
  criterion_5(claims);
  criterion_6();
  criterion_7();
  criterion_8();
  fmt::print("{}/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
