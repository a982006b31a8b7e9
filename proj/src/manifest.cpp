// Claim-manifest text format, version 1.
//
//   version 1
//   claim <id>
//   desc <text>
//   cite <text>
//   tol <real>
//   param <var>=<const> [<var>=<const> ...]      (repeatable)
//   let <name> <quantity>                         (combo operands)
//   lhs <quantity>
//   rhs <quantity>                                (repeatable)
//   end
//
// <quantity>:
//   int1d <var> <lower> <upper|inf> [split <p1> <p2> ...] :: <expr>
//   int2d <outer-var> <inner-var> <outer-dom> <inner-dom> [order inner-first|outer-first] :: <expr>
//       where <dom> is <lower>:<upper|inf>[@<s1>,<s2>,...]
//   series odd|altodd <s> [scale <const>]
//   zeta2
//   moment :: <k-expr>, <p-expr>
//   closed :: <expr>
//   combo <const> * <name> [+ <const> * <name> ...]
//
// <const> is a whitespace-free constant expression such as 0.5, -1/2 or pi.
// Blank lines and lines starting with '#' are ignored.

#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "basel/ledger.hpp"

namespace basel::ledger {

ManifestError::ManifestError(Kind kind, std::size_t line, std::string message,
                             std::optional<std::size_t> expression_position)
    : std::runtime_error(fmt::format("manifest line {}: {}", line, message)),
      kind_(kind),
      line_(line),
      expression_position_(expression_position) {}

namespace {

using expr::Var;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> words;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) words.push_back(std::move(w));
  return words;
}

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ManifestError(ManifestError::Kind::Syntax, line_, message);
  }

  expr::Expr expression(std::string_view text) const {
    try {
      return expr::parse(text);
    } catch (const expr::ParseError& e) {
      throw ManifestError(ManifestError::Kind::Syntax, line_,
                          fmt::format("in expression '{}': {}", text, e.what()), e.position());
    }
  }

  double constant(std::string_view text) const {
    const expr::Expr e = expression(text);
    if (expr::variables(e) != 0) fail(fmt::format("'{}' must be a constant", text));
    try {
      return expr::eval(e, {});
    } catch (const expr::EvalError& err) {
      fail(fmt::format("cannot evaluate '{}': {}", text, err.what()));
    }
  }

  Var variable(std::string_view text) const {
    if (auto v = expr::var_from_name(text)) return *v;
    fail(fmt::format("'{}' is not a variable (x, y or z)", text));
  }

  int integer(std::string_view text) const {
    int value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) fail(fmt::format("'{}' is not an integer", text));
    return value;
  }

  quad::IntegrationDomain domain(double lower, std::string_view upper, std::vector<double> splits) const {
    try {
      if (upper == "inf") return quad::IntegrationDomain::semi_infinite(lower, std::move(splits));
      return quad::IntegrationDomain::finite(lower, constant(upper), std::move(splits));
    } catch (const quad::InvalidDomain& e) {
      fail(e.what());
    }
  }

  // <lower>:<upper>[@s1,s2]
  quad::IntegrationDomain compact_domain(std::string_view token) const {
    const auto at = token.find('@');
    const std::string_view range = token.substr(0, at);
    const auto colon = range.find(':');
    if (colon == std::string_view::npos) fail(fmt::format("domain '{}' must look like lower:upper", token));
    std::vector<double> splits;
    if (at != std::string_view::npos) {
      std::string_view rest = token.substr(at + 1);
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        splits.push_back(constant(rest.substr(0, comma)));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
    }
    return domain(constant(range.substr(0, colon)), range.substr(colon + 1), std::move(splits));
  }

  Quantity quantity(std::string_view text, const std::map<std::string, Quantity, std::less<>>& lets) const {
    std::string_view head = text;
    std::optional<std::string_view> body;
    if (const auto sep = text.find("::"); sep != std::string_view::npos) {
      head = trim(text.substr(0, sep));
      body = trim(text.substr(sep + 2));
    }
    const std::vector<std::string> w = split_words(head);
    if (w.empty()) fail("empty quantity");
    const std::string& kind = w[0];
    auto need_body = [&]() -> std::string_view {
      if (!body || body->empty()) fail(fmt::format("'{}' needs ':: <expression>'", kind));
      return *body;
    };
    auto no_body = [&] {
      if (body) fail(fmt::format("'{}' takes no expression", kind));
    };

    if (kind == "int1d") {
      if (w.size() < 4) fail("int1d needs <var> <lower> <upper>");
      std::vector<double> splits;
      if (w.size() > 4) {
        if (w[4] != "split" || w.size() == 5) fail("expected 'split <points>' after the bounds");
        for (std::size_t i = 5; i < w.size(); ++i) splits.push_back(constant(w[i]));
      }
      const Var v = variable(w[1]);
      auto d = domain(constant(w[2]), w[3], std::move(splits));
      return {Integral1D{expression(need_body()), v, std::move(d)}};
    }
    if (kind == "int2d") {
      if (w.size() != 5 && w.size() != 7) fail("int2d needs <outer-var> <inner-var> <outer-dom> <inner-dom> [order ...]");
      quad::Order order = quad::Order::InnerFirst;
      if (w.size() == 7) {
        if (w[5] != "order") fail(fmt::format("unexpected '{}'", w[5]));
        if (w[6] == "inner-first") order = quad::Order::InnerFirst;
        else if (w[6] == "outer-first") order = quad::Order::OuterFirst;
        else fail(fmt::format("unknown order '{}'", w[6]));
      }
      return {Integral2D{expression(need_body()), variable(w[1]), variable(w[2]), compact_domain(w[3]),
                         compact_domain(w[4]), order}};
    }
    if (kind == "series") {
      no_body();
      if (w.size() != 3 && w.size() != 5) fail("series needs odd|altodd <s> [scale <const>]");
      series::SeriesSpec spec{};
      if (w[1] == "odd") spec.family = series::Family::OddPower;
      else if (w[1] == "altodd") spec.family = series::Family::AlternatingOddPower;
      else fail(fmt::format("unknown series family '{}'", w[1]));
      spec.exponent = integer(w[2]);
      if (spec.exponent < 2) fail("series exponent must be >= 2");
      double scale = 1.0;
      if (w.size() == 5) {
        if (w[3] != "scale") fail(fmt::format("unexpected '{}'", w[3]));
        scale = constant(w[4]);
      }
      return {SeriesSum{spec, scale}};
    }
    if (kind == "zeta2") {
      no_body();
      if (w.size() != 1) fail("zeta2 takes no arguments");
      return {Zeta2{}};
    }
    if (kind == "moment") {
      const std::string_view args = need_body();
      const auto comma = args.find(',');
      if (w.size() != 1 || comma == std::string_view::npos) fail("moment needs ':: <k>, <p>'");
      return {Moment{expression(trim(args.substr(0, comma))), expression(trim(args.substr(comma + 1)))}};
    }
    if (kind == "closed") {
      if (w.size() != 1) fail("closed takes only ':: <expression>'");
      return {ClosedForm{expression(need_body())}};
    }
    if (kind == "combo") {
      no_body();
      LinearCombo combo;
      std::size_t i = 1;
      for (;;) {
        if (i + 3 > w.size() || w[i + 1] != "*") fail("combo terms look like '<const> * <name>'");
        const auto ref = lets.find(w[i + 2]);
        if (ref == lets.end()) fail(fmt::format("unknown quantity '{}' (define it with 'let')", w[i + 2]));
        combo.terms.push_back({constant(w[i]), std::make_shared<const Quantity>(ref->second)});
        i += 3;
        if (i == w.size()) break;
        if (w[i] != "+") fail(fmt::format("expected '+' between combo terms, found '{}'", w[i]));
        ++i;
      }
      return {std::move(combo)};
    }
    fail(fmt::format("unknown quantity kind '{}'", kind));
  }

 private:
  std::size_t line_;
};

// ---- rendering -------------------------------------------------------------

std::string number(double v) {
  if (v == std::numbers::pi) return "pi";
  if (v == -std::numbers::pi) return "-pi";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string domain_bounds(const quad::IntegrationDomain& d, char sep) {
  const std::string upper = d.is_finite() ? number(d.upper()) : "inf";
  return number(d.lower()) + sep + upper;
}

class Renderer {
 public:
  std::string quantity(const Quantity& q) {
    return std::visit([&](const auto& v) { return render(v); }, q.value);
  }
  std::vector<std::string> lets;

 private:
  std::string render(const Integral1D& q) {
    std::string out = fmt::format("int1d {} {}", expr::var_name(q.variable), domain_bounds(q.domain, ' '));
    if (!q.domain.split_points().empty()) {
      out += " split";
      for (double s : q.domain.split_points()) out += " " + number(s);
    }
    return out + " :: " + expr::render(q.integrand);
  }
  static std::string compact(const quad::IntegrationDomain& d) {
    std::string out = domain_bounds(d, ':');
    const auto splits = d.split_points();
    for (std::size_t i = 0; i < splits.size(); ++i) out += (i == 0 ? "@" : ",") + number(splits[i]);
    return out;
  }
  std::string render(const Integral2D& q) {
    return fmt::format("int2d {} {} {} {} order {} :: {}", expr::var_name(q.outer_variable),
                       expr::var_name(q.inner_variable), compact(q.outer_domain), compact(q.inner_domain),
                       q.order == quad::Order::InnerFirst ? "inner-first" : "outer-first",
                       expr::render(q.integrand));
  }
  std::string render(const SeriesSum& q) {
    const char* family = q.spec.family == series::Family::OddPower ? "odd" : "altodd";
    std::string out = fmt::format("series {} {}", family, q.spec.exponent);
    if (q.scale != 1.0) out += " scale " + number(q.scale);
    return out;
  }
  std::string render(const Zeta2&) { return "zeta2"; }
  std::string render(const Moment& q) {
    return "moment :: " + expr::render(q.k) + ", " + expr::render(q.p);
  }
  std::string render(const ClosedForm& q) { return "closed :: " + expr::render(q.expression); }
  std::string render(const LinearCombo& q) {
    std::string out = "combo";
    for (std::size_t i = 0; i < q.terms.size(); ++i) {
      const std::string operand = quantity(*q.terms[i].quantity);
      const std::string name = fmt::format("q{}", lets.size() + 1);
      lets.push_back(fmt::format("let {} {}", name, operand));
      out += fmt::format("{} {} * {}", i == 0 ? "" : " +", number(q.terms[i].coefficient), name);
    }
    return out;
  }
};

}  // namespace

std::vector<Claim> load_manifest(std::string_view text) {
  std::vector<Claim> claims;
  std::set<std::string, std::less<>> ids;
  std::optional<Claim> current;
  std::optional<Quantity> lhs;
  std::map<std::string, Quantity, std::less<>> lets;
  std::size_t claim_line = 0;
  std::size_t line_no = 0;
  bool seen_content = false;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    const LineParser p(line_no);
    const auto space = line.find_first_of(" \t");
    const std::string_view keyword = line.substr(0, space);
    const std::string_view rest = space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));

    if (keyword == "version") {
      if (seen_content) p.fail("'version' must come first");
      if (rest != "1") p.fail(fmt::format("unsupported manifest version '{}'", rest));
      seen_content = true;
      continue;
    }
    seen_content = true;

    if (keyword == "claim") {
      if (current) p.fail(fmt::format("claim '{}' is missing 'end'", current->id));
      if (rest.empty() || rest.find_first_of(" \t") != std::string_view::npos) p.fail("claim needs a single id");
      if (ids.count(rest) != 0) {
        throw ManifestError(ManifestError::Kind::DuplicateId, line_no, fmt::format("duplicate claim id '{}'", rest));
      }
      current.emplace();
      current->id = std::string(rest);
      lhs.reset();
      lets.clear();
      claim_line = line_no;
      continue;
    }
    if (!current) p.fail(fmt::format("'{}' outside a claim block", keyword));

    if (keyword == "desc") {
      current->description = std::string(rest);
    } else if (keyword == "cite") {
      current->citation = std::string(rest);
    } else if (keyword == "tol") {
      current->tolerance = p.constant(rest);
    } else if (keyword == "param") {
      expr::Bindings b;
      for (const std::string& word : split_words(rest)) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) p.fail(fmt::format("parameter '{}' must look like var=value", word));
        const Var v = p.variable(std::string_view(word).substr(0, eq));
        if (b.is_bound(v)) p.fail(fmt::format("parameter '{}' bound twice", word.substr(0, eq)));
        b.set(v, p.constant(std::string_view(word).substr(eq + 1)));
      }
      if (b.bound_mask() == 0) p.fail("param needs at least one binding");
      current->parameters.push_back(b);
    } else if (keyword == "let") {
      const auto sp = rest.find_first_of(" \t");
      if (sp == std::string_view::npos) p.fail("let needs <name> <quantity>");
      const std::string name(rest.substr(0, sp));
      if (lets.count(name) != 0) p.fail(fmt::format("'{}' is already defined", name));
      lets.emplace(name, p.quantity(trim(rest.substr(sp)), lets));
    } else if (keyword == "lhs") {
      if (lhs) p.fail("claim already has an lhs");
      lhs = p.quantity(rest, lets);
    } else if (keyword == "rhs") {
      current->rhs.push_back(p.quantity(rest, lets));
    } else if (keyword == "end") {
      if (!lhs) p.fail(fmt::format("claim '{}' has no lhs", current->id));
      if (current->rhs.empty()) p.fail(fmt::format("claim '{}' has no rhs", current->id));
      current->lhs = std::move(*lhs);
      try {
        validate(*current);
      } catch (const InvalidClaim& e) {
        throw ManifestError(ManifestError::Kind::InvalidClaim, claim_line, e.what());
      }
      ids.insert(current->id);
      claims.push_back(std::move(*current));
      current.reset();
    } else {
      p.fail(fmt::format("unknown keyword '{}'", keyword));
    }
  }
  if (current) LineParser(line_no).fail(fmt::format("claim '{}' is missing 'end'", current->id));
  return claims;
}

std::string render_manifest(const std::vector<Claim>& claims) {
  std::string out = "version 1\n";
  for (const Claim& c : claims) {
    out += "\nclaim " + c.id + "\n";
    if (!c.description.empty()) out += "desc " + c.description + "\n";
    if (!c.citation.empty()) out += "cite " + c.citation + "\n";
    out += "tol " + number(c.tolerance) + "\n";
    for (const expr::Bindings& b : c.parameters) {
      out += "param";
      for (const Var v : {Var::X, Var::Y, Var::Z}) {
        if (b.is_bound(v)) out += fmt::format(" {}={}", expr::var_name(v), number(b.get(v)));
      }
      out += "\n";
    }
    Renderer r;
    std::vector<std::string> sides;
    sides.push_back("lhs " + r.quantity(c.lhs));
    for (const Quantity& q : c.rhs) sides.push_back("rhs " + r.quantity(q));
    for (const std::string& l : r.lets) out += l + "\n";
    for (const std::string& s : sides) out += s + "\n";
    out += "end\n";
  }
  return out;
}

}  // namespace basel::ledger
