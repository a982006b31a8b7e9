#include "basel/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/ostream.h>

#include "basel/expr.hpp"
#include "basel/ledger.hpp"
#include "basel/quadrature.hpp"
#include "basel/report.hpp"
#include "basel/series.hpp"

namespace basel::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VerifyOptions {
  std::optional<double> tolerance_override;
  std::optional<int> max_level;
  int jobs = 1;
  bool json = false;
  bool timing = true;
  std::vector<std::string> claim_filter;
  std::optional<std::string> manifest_path;
};

struct IntegrateOptions {
  std::string expression;
  std::string variable = "x";
  std::string lower;
  std::string upper;
  std::vector<std::string> splits;
  std::optional<double> tolerance;
  std::optional<int> max_level;
};

struct SumOptions {
  std::string family;
  int exponent = 0;
  double tolerance = 1e-12;
};

double constant(const std::string& text, const char* what) {
  try {
    const expr::Expr e = expr::parse(text);
    if (expr::variables(e) != 0) throw UsageError(fmt::format("{} '{}' must be a constant", what, text));
    return expr::eval(e, {});
  } catch (const expr::ParseError& e) {
    throw UsageError(fmt::format("{} '{}': {}", what, text, e.what()));
  } catch (const expr::EvalError& e) {
    throw UsageError(fmt::format("{} '{}': {}", what, text, e.what()));
  }
}

quad::QuadConfig engine_config(std::optional<double> tol, std::optional<int> max_level) {
  quad::QuadConfig config;
  if (tol) {
    if (!(*tol > 0.0)) throw UsageError("--tol must be positive");
    config.abs_tol = config.rel_tol = *tol;
  }
  if (max_level) config.max_level = *max_level;
  try {
    config.validate();
  } catch (const quad::InvalidConfig& e) {
    throw UsageError(e.what());
  }
  return config;
}

std::vector<ledger::Claim> load_claims(const std::optional<std::string>& manifest_path) {
  if (!manifest_path) return ledger::builtin_claims();
  std::ifstream in(*manifest_path);
  if (!in) throw UsageError(fmt::format("cannot read manifest '{}'", *manifest_path));
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return ledger::load_manifest(text.str());
  } catch (const ledger::ManifestError& e) {
    throw UsageError(fmt::format("{}: {}", *manifest_path, e.what()));
  }
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.jobs < 1) throw UsageError("--jobs must be at least 1");
  if (o.tolerance_override && !(*o.tolerance_override > 0.0)) throw UsageError("--tol must be positive");
  std::vector<ledger::Claim> claims = load_claims(o.manifest_path);
  if (!o.claim_filter.empty()) {
    for (const std::string& id : o.claim_filter) {
      if (std::none_of(claims.begin(), claims.end(), [&](const ledger::Claim& c) { return c.id == id; })) {
        throw UsageError(fmt::format("unknown claim id '{}'", id));
      }
    }
    const std::set<std::string> wanted(o.claim_filter.begin(), o.claim_filter.end());
    std::erase_if(claims, [&](const ledger::Claim& c) { return wanted.count(c.id) == 0; });
  }
  // A claim tolerance t asks the engine for t/100, never looser than the default.
  std::optional<double> engine_tol;
  if (o.tolerance_override) engine_tol = std::min(quad::QuadConfig{}.abs_tol, *o.tolerance_override / 100.0);
  const quad::QuadConfig config = engine_config(engine_tol, o.max_level);
  if (o.tolerance_override) {
    for (ledger::Claim& c : claims) c.tolerance = *o.tolerance_override;
  }
  if (!o.json) {
    fmt::print(err, "verifying {} claim(s) with {} job(s)\n", claims.size(), o.jobs);
  }
  const ledger::Report report = ledger::run_all(claims, config, o.jobs);
  out << (o.json ? report::to_json(report, o.timing) : report::to_table(report));
  if (report.any_non_convergence()) return kExitNonConvergence;
  return report.all_passed ? kExitOk : kExitClaimFailed;
}

int cmd_integrate(const IntegrateOptions& o, std::ostream& out, std::ostream& err) {
  const auto var = expr::var_from_name(o.variable);
  if (!var) throw UsageError(fmt::format("--var must be x, y or z, got '{}'", o.variable));
  expr::Expr integrand;
  try {
    integrand = expr::parse(o.expression);
  } catch (const expr::ParseError& e) {
    throw UsageError(fmt::format("{}\n  {}\n  {}^", e.what(), o.expression, std::string(e.position(), ' ')));
  }
  const std::uint8_t extra = expr::variables(integrand) & static_cast<std::uint8_t>(~(1u << static_cast<unsigned>(*var)));
  if (extra != 0) throw UsageError("expression uses a variable other than the integration variable");

  const double lower = constant(o.lower, "--from");
  std::vector<double> splits;
  for (const std::string& s : o.splits) splits.push_back(constant(s, "--split"));
  const quad::QuadConfig config = engine_config(o.tolerance, o.max_level);
  std::optional<quad::IntegrationDomain> domain;
  try {
    domain = o.upper == "inf" ? quad::IntegrationDomain::semi_infinite(lower, splits)
                              : quad::IntegrationDomain::finite(lower, constant(o.upper, "--to"), splits);
  } catch (const quad::InvalidDomain& e) {
    throw UsageError(e.what());
  }

  auto f = [&](double t) { return expr::eval(integrand, expr::Bindings{}.set(*var, t)); };
  try {
    const quad::QuadResult r = quad::integrate(f, *domain, config);
    fmt::print(out, "value          {:.17g}\n", r.value);
    fmt::print(out, "error_estimate {:.3e}\n", r.error_estimate);
    fmt::print(out, "evaluations    {}\n", r.evaluations);
    fmt::print(out, "converged      {}\n", r.converged);
    return r.converged ? kExitOk : kExitNonConvergence;
  } catch (const quad::EvaluationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitNonConvergence;
  }
}

int cmd_sum(const SumOptions& o, std::ostream& out, std::ostream& err) {
  series::SeriesSpec spec{};
  if (o.family == "odd") spec.family = series::Family::OddPower;
  else if (o.family == "altodd") spec.family = series::Family::AlternatingOddPower;
  else throw UsageError(fmt::format("family must be 'odd' or 'altodd', got '{}'", o.family));
  spec.exponent = o.exponent;
  if (o.exponent < 2) throw UsageError(fmt::format("exponent must be >= 2 (the series diverges for {})", o.exponent));
  if (!(o.tolerance > 0.0)) throw UsageError("--tol must be positive");
  try {
    const series::SeriesResult r = series::sum_series(spec, o.tolerance);
    fmt::print(out, "value      {:.17g}\n", r.value);
    fmt::print(out, "terms_used {}\n", r.terms_used);
    fmt::print(out, "tail_bound {:.3e}\n", r.tail_bound);
    return kExitOk;
  } catch (const series::ToleranceUnreachable& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitNonConvergence;
  }
}

int cmd_claims(const std::optional<std::string>& manifest_path, std::ostream& out) {
  for (const ledger::Claim& c : load_claims(manifest_path)) {
    fmt::print(out, "{:<6} tol {:<7.1e} {}\n       {}\n", c.id, c.tolerance, c.citation, c.description);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of the odd-square series identities"};
  app.name(args.empty() ? "basel" : args.front());
  app.require_subcommand(1);

  VerifyOptions verify;
  verify.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto* v = app.add_subcommand("verify", "Run the claim ledger and report agreement");
  v->add_option("--tol", verify.tolerance_override, "Override every claim tolerance");
  v->add_option("--max-level", verify.max_level, "Maximum double-exponential refinement level");
  v->add_option("--jobs", verify.jobs, "Claims evaluated concurrently");
  v->add_flag("--json", verify.json, "Emit the JSON report instead of the table");
  v->add_option("--claim", verify.claim_filter, "Only run this claim id (repeatable)");
  v->add_option("--manifest", verify.manifest_path, "Load claims from a manifest file");
  bool no_timing = false;
  v->add_flag("--no-timing", no_timing, "Write ms = 0 so the JSON is reproducible");

  IntegrateOptions integrate;
  auto* in = app.add_subcommand("integrate", "Integrate an expression in one variable");
  in->add_option("expression", integrate.expression, "Integrand, e.g. \"ln(y)/(1-y^2)\"")->required();
  in->add_option("--var", integrate.variable, "Integration variable (x, y or z)");
  in->add_option("--from", integrate.lower, "Lower bound")->required();
  in->add_option("--to", integrate.upper, "Upper bound or 'inf'")->required();
  in->add_option("--split", integrate.splits, "Interior split point (repeatable)");
  in->add_option("--tol", integrate.tolerance, "Absolute and relative tolerance");
  in->add_option("--max-level", integrate.max_level, "Maximum refinement level");

  SumOptions sum;
  auto* s = app.add_subcommand("sum", "Sum 1/(2k+1)^s or (-1)^k/(2k+1)^s");
  s->add_option("family", sum.family, "odd or altodd")->required();
  s->add_option("exponent", sum.exponent, "Exponent s >= 2")->required();
  s->add_option("--tol", sum.tolerance, "Truncation tolerance");

  std::optional<std::string> claims_manifest;
  auto* c = app.add_subcommand("claims", "List the claim catalog with citations");
  c->add_option("--manifest", claims_manifest, "Load claims from a manifest file");

  std::vector<std::string> rest(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const std::string help = (app.get_subcommands().empty() ? &app : app.get_subcommands().front())->help();
    fmt::print(err, "error: {}\n\n{}", e.what(), help);
    return kExitUsage;
  }

  try {
    if (v->parsed()) {
      verify.timing = !no_timing;
      return cmd_verify(verify, out, err);
    }
    if (in->parsed()) return cmd_integrate(integrate, out, err);
    if (s->parsed()) return cmd_sum(sum, out, err);
    return cmd_claims(claims_manifest, out);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
}

}  // namespace basel::cli
