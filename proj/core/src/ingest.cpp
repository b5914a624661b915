#include "simulroot/ingest.hpp"

#include <cctype>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"
#include "simulroot/errors.hpp"

namespace simulroot {

namespace {

using json = nlohmann::ordered_json;

enum class BaseKind { linear, sin_half, sinh_half };

Family family_for(BaseKind kind) {
  switch (kind) {
    case BaseKind::linear: return Family::algebraic;
    case BaseKind::sin_half: return Family::trigonometric;
    case BaseKind::sinh_half: return Family::exponential;
  }
  return Family::algebraic;
}

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, const PrecisionConfig& cfg) : text_(text), cfg_(cfg) {}

  FactoredPoly parse() {
    std::optional<BaseKind> kind;
    std::vector<Real> roots;
    std::vector<int> mults;
    skip_ws();
    if (at_end()) throw ParseError("empty expression", pos_);
    while (true) {
      skip_ws();
      const std::size_t factor_pos = pos_;
      auto [base_kind, root] = base();
      int power = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        power = positive_int();
      }
      if (kind && *kind != base_kind) {
        throw MixedFamilyError("factor mixes " + std::string(to_string(family_for(base_kind))) +
                                   " and " + std::string(to_string(family_for(*kind))) +
                                   " bases",
                               factor_pos);
      }
      kind = base_kind;
      for (const auto& r : roots) {
        if (r == root) {
          throw DuplicateRootError("duplicate root " + root.str() + " at position " +
                                   std::to_string(factor_pos));
        }
      }
      roots.push_back(std::move(root));
      mults.push_back(power);
      skip_ws();
      if (at_end()) break;
      expect('*');
    }
    return FactoredPoly(family_for(*kind), std::move(roots), std::move(mults));
  }

 private:
  std::pair<BaseKind, Real> base() {
    if (peek() == '(') {
      return {BaseKind::linear, linear_shift()};
    }
    if (accept_word("sinh")) return {BaseKind::sinh_half, half_angle()};
    if (accept_word("sin")) return {BaseKind::sin_half, half_angle()};
    throw ParseError("expected '(', 'sin' or 'sinh'", pos_);
  }

  // '(' 'x' SIGN NUM ')' -> the root
  Real linear_shift() {
    expect('(');
    expect('x');
    skip_ws();
    const char sign = peek();
    if (sign != '+' && sign != '-') throw ParseError("expected '+' or '-'", pos_);
    ++pos_;
    Real shift = number();
    expect(')');
    return sign == '+' ? -shift : shift;
  }

  // '(' '(' 'x' SIGN NUM ')' '/' '2' ')'
  Real half_angle() {
    expect('(');
    Real root = linear_shift();
    expect('/');
    expect('2');
    expect(')');
    return root;
  }

  Real number() {
    skip_ws();
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) {
      throw ParseError("expected a decimal number", start);
    }
    return Real::parse(text_.substr(start, pos_ - start), cfg_);
  }

  int positive_int() {
    skip_ws();
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) throw ParseError("expected a positive integer exponent", start);
    const auto digits = text_.substr(start, pos_ - start);
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    const int value = std::stoi(std::string(digits));
    if (value < 1) throw ParseError("exponent must be positive", start);
    return value;
  }

  bool accept_word(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    // "sin" must not swallow the 'h' of "sinh".
    const std::size_t after = pos_ + word.size();
    if (after < text_.size() && std::isalpha(static_cast<unsigned char>(text_[after]))) return false;
    pos_ = after;
    return true;
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      throw ParseError(std::string("expected '") + c + "'" +
                           (at_end() ? std::string(" but input ended")
                                     : std::string(", found '") + peek() + "'"),
                       pos_);
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  PrecisionConfig cfg_;
  std::size_t pos_ = 0;
};

// ---- JSON helpers -------------------------------------------------------------------

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing required field");
  return *it;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

Real as_decimal(const json& v, const std::string& path, const PrecisionConfig& cfg) {
  if (!v.is_string()) throw SchemaError(path, "expected a decimal string");
  try {
    return Real::parse(v.get<std::string>(), cfg);
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

std::vector<Real> as_decimal_array(const json& v, const std::string& path,
                                   const PrecisionConfig& cfg) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of decimal strings");
  std::vector<Real> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_decimal(v[i], path + "[" + std::to_string(i) + "]", cfg));
  }
  return out;
}

std::vector<int> as_int_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json parse_json(std::string_view bytes) {
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) throw SchemaError(path + "." + key, "unknown field");
  }
}

Polynomial coefficient_polynomial(Family family, const json& coeffs, const PrecisionConfig& cfg) {
  const std::string path = "$.coefficients";
  if (!coeffs.is_object()) throw SchemaError(path, "expected an object");
  reject_unknown(coeffs, {"a0", "a", "b"}, path);
  auto a = as_decimal_array(require(coeffs, "a", path), path + ".a", cfg);
  try {
    if (family == Family::algebraic) {
      if (coeffs.contains("a0") || coeffs.contains("b")) {
        throw SchemaError(path, "algebraic coefficients are monic: give only \"a\" = [a1..an]");
      }
      return AlgebraicCoeffPoly(std::move(a));
    }
    Real a0 = coeffs.contains("a0") ? as_decimal(coeffs.at("a0"), path + ".a0", cfg) : Real(cfg);
    auto b = as_decimal_array(require(coeffs, "b", path), path + ".b", cfg);
    if (family == Family::trigonometric) return TrigCoeffPoly(std::move(a0), std::move(a), std::move(b));
    return ExpCoeffPoly(std::move(a0), std::move(a), std::move(b));
  } catch (const InvariantError& e) {
    throw SchemaError(path, e.what());
  }
}

json decimal_array(const std::vector<Real>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json opt_index(const std::optional<std::size_t>& i) { return i ? json(*i) : json(nullptr); }

}  // namespace

FactoredPoly parse_expression(std::string_view text, const PrecisionConfig& cfg) {
  return ExpressionParser(text, cfg).parse();
}

std::string print_expression(const FactoredPoly& f) {
  std::string out;
  for (std::size_t j = 0; j < f.roots().size(); ++j) {
    if (j) out += "*";
    const Real& r = f.roots()[j];
    const std::string shift = r.sign() < 0 ? "x+" + (-r).str() : "x-" + r.str();
    switch (f.family()) {
      case Family::algebraic: out += "(" + shift + ")"; break;
      case Family::trigonometric: out += "sin((" + shift + ")/2)"; break;
      case Family::exponential: out += "sinh((" + shift + ")/2)"; break;
    }
    if (f.mults()[j] != 1) out += "^" + std::to_string(f.mults()[j]);
  }
  return out;
}

MultiplicityProfile ProblemSpec::profile() const {
  return MultiplicityProfile(family, mults, degree_of(polynomial));
}

EstimateVector ProblemSpec::initial_estimates() const { return EstimateVector{init, 0}; }

ProblemSpec parse_problem(std::string_view bytes, std::optional<int> digits_override) {
  const json doc = parse_json(bytes);
  if (!doc.is_object()) throw SchemaError("$", "expected an object");
  reject_unknown(doc, {"family", "expr", "coefficients", "mults", "init", "digits", "max_iters",
                       "tolerance", "method"},
                 "$");

  SolveConfig config;
  if (doc.contains("digits")) config.precision.digits = as_int(doc["digits"], "$.digits");
  if (digits_override) config.precision.digits = *digits_override;
  try {
    config.precision.validate();
  } catch (const InvariantError& e) {
    throw SchemaError("$.digits", e.what());
  }
  const auto& cfg = config.precision;

  const std::string family_text = as_string(require(doc, "family", "$"), "$.family");
  const auto family = parse_family(family_text);
  if (!family) {
    throw SchemaError("$.family", "expected algebraic, trigonometric or exponential, got '" +
                                      family_text + "'");
  }

  const bool has_expr = doc.contains("expr");
  const bool has_coeffs = doc.contains("coefficients");
  if (has_expr == has_coeffs) throw SchemaError("$", "exactly one of expr, coefficients is required");

  std::optional<std::string> expr;
  std::optional<Polynomial> poly;
  if (has_expr) {
    expr = as_string(doc["expr"], "$.expr");
    try {
      FactoredPoly f = parse_expression(*expr, cfg);
      if (f.family() != *family) {
        throw SchemaError("$.family", "expression is " + std::string(to_string(f.family())) +
                                          " but family is " + family_text);
      }
      poly.emplace(std::move(f));
    } catch (const ParseError& e) {
      throw SchemaError("$.expr", e.what());
    }
  } else {
    poly.emplace(coefficient_polynomial(*family, doc["coefficients"], cfg));
  }

  std::vector<int> mults = as_int_array(require(doc, "mults", "$"), "$.mults");
  std::vector<Real> init = as_decimal_array(require(doc, "init", "$"), "$.init", cfg);

  if (doc.contains("max_iters")) config.max_iters = as_int(doc["max_iters"], "$.max_iters");
  if (config.max_iters < 1) throw SchemaError("$.max_iters", "must be at least 1");
  if (doc.contains("tolerance")) {
    config.step_tolerance = as_decimal(doc["tolerance"], "$.tolerance", cfg);
    if (!(*config.step_tolerance > 0)) throw SchemaError("$.tolerance", "must be positive");
  }
  if (doc.contains("method")) {
    const auto text = as_string(doc["method"], "$.method");
    const auto method = parse_method(text);
    if (!method) throw SchemaError("$.method", "expected chebyshev or newton_baseline");
    config.method = *method;
  }

  if (init.size() != mults.size()) {
    throw InvariantError("init has " + std::to_string(init.size()) + " estimates but mults has " +
                         std::to_string(mults.size()) + " entries");
  }

  ProblemSpec spec{*family, has_expr ? PolyForm::factored : PolyForm::coefficients,
                   std::move(expr),  std::move(*poly),
                   std::move(mults), std::move(init),
                   std::move(config)};
  (void)spec.profile();  // validates the multiplicity sum
  require_distinct(spec.initial_estimates());
  return spec;
}

std::optional<TraceFormat> parse_trace_format(std::string_view text) {
  if (text == "table") return TraceFormat::table;
  if (text == "csv") return TraceFormat::csv;
  if (text == "json") return TraceFormat::json;
  return std::nullopt;
}

std::string render_trace(const SolveReport& report, TraceFormat format,
                         const RenderOptions& options) {
  const auto& snaps = report.trace.snapshots;
  const std::size_t m = snaps.empty() ? report.mults.size() : snaps.front().x.size();
  std::ostringstream out;

  switch (format) {
    case TraceFormat::table: {
      out << "k";
      for (std::size_t i = 0; i < m; ++i) out << (i ? ", " : "  ") << "x" << (i + 1);
      out << "\n";
      for (const auto& s : snaps) {
        out << s.k;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
          out << (i ? ", " : "  ") << s.x[i].fixed(options.table_decimals);
        }
        out << "\n";
      }
      break;
    }
    case TraceFormat::csv: {
      out << "k";
      for (std::size_t i = 0; i < m; ++i) out << ",x" << (i + 1);
      out << "\n";
      for (const auto& s : snaps) {
        out << s.k;
        for (const auto& x : s.x) out << "," << x.str();
        out << "\n";
      }
      break;
    }
    case TraceFormat::json: {
      json doc;
      doc["family"] = std::string(to_string(report.family));
      doc["method"] = std::string(to_string(report.method));
      doc["digits"] = report.digits;
      doc["mults"] = report.mults;
      doc["converged"] = report.converged;
      doc["stop_reason"] = std::string(to_string(report.stop_reason));
      if (report.failure) {
        doc["failure"] = json{{"kind", report.failure->kind},
                              {"root_index", opt_index(report.failure->root_index)},
                              {"other_index", opt_index(report.failure->other_index)},
                              {"message", report.failure->message}};
      } else {
        doc["failure"] = nullptr;
      }
      json trace;
      trace["snapshots"] = json::array();
      for (const auto& s : snaps) trace["snapshots"].push_back(json{{"k", s.k}, {"x", decimal_array(s.x)}});
      trace["steps"] = json::array();
      for (const auto& row : report.trace.steps) trace["steps"].push_back(decimal_array(row));
      if (report.trace.errors) {
        trace["errors"] = json::array();
        for (const auto& row : *report.trace.errors) trace["errors"].push_back(decimal_array(row));
      }
      doc["trace"] = std::move(trace);
      out << doc.dump(2) << "\n";
      break;
    }
  }
  return out.str();
}

SolveReport parse_report(std::string_view bytes) {
  const json doc = parse_json(bytes);
  if (!doc.is_object()) throw SchemaError("$", "expected an object");

  SolveReport report;
  report.digits = as_int(require(doc, "digits", "$"), "$.digits");
  PrecisionConfig cfg;
  cfg.digits = report.digits;
  try {
    cfg.validate();
  } catch (const InvariantError& e) {
    throw SchemaError("$.digits", e.what());
  }

  const auto family = parse_family(as_string(require(doc, "family", "$"), "$.family"));
  if (!family) throw SchemaError("$.family", "unknown family");
  report.family = *family;
  if (doc.contains("method")) {
    const auto method = parse_method(as_string(doc["method"], "$.method"));
    if (!method) throw SchemaError("$.method", "unknown method");
    report.method = *method;
  }
  report.mults = as_int_array(require(doc, "mults", "$"), "$.mults");
  const auto& converged = require(doc, "converged", "$");
  if (!converged.is_boolean()) throw SchemaError("$.converged", "expected a boolean");
  report.converged = converged.get<bool>();
  const auto reason = parse_stop_reason(as_string(require(doc, "stop_reason", "$"), "$.stop_reason"));
  if (!reason) throw SchemaError("$.stop_reason", "unknown stop reason");
  report.stop_reason = *reason;

  if (doc.contains("failure") && !doc["failure"].is_null()) {
    const auto& f = doc["failure"];
    StepFailure failure;
    failure.kind = as_string(require(f, "kind", "$.failure"), "$.failure.kind");
    failure.message = f.contains("message") ? as_string(f["message"], "$.failure.message") : "";
    for (const auto* key : {"root_index", "other_index"}) {
      if (f.contains(key) && !f[key].is_null()) {
        const auto idx = static_cast<std::size_t>(as_int(f[key], std::string("$.failure.") + key));
        (std::string(key) == "root_index" ? failure.root_index : failure.other_index) = idx;
      }
    }
    report.failure = std::move(failure);
  }

  const auto& trace = require(doc, "trace", "$");
  const auto& snaps = require(trace, "snapshots", "$.trace");
  if (!snaps.is_array() || snaps.empty()) {
    throw SchemaError("$.trace.snapshots", "expected a non-empty array");
  }
  for (std::size_t k = 0; k < snaps.size(); ++k) {
    const std::string path = "$.trace.snapshots[" + std::to_string(k) + "]";
    EstimateVector v;
    v.k = as_int(require(snaps[k], "k", path), path + ".k");
    v.x = as_decimal_array(require(snaps[k], "x", path), path + ".x", cfg);
    report.trace.snapshots.push_back(std::move(v));
  }
  if (trace.contains("steps")) {
    const auto& steps = trace["steps"];
    if (!steps.is_array()) throw SchemaError("$.trace.steps", "expected an array");
    for (std::size_t k = 0; k < steps.size(); ++k) {
      report.trace.steps.push_back(
          as_decimal_array(steps[k], "$.trace.steps[" + std::to_string(k) + "]", cfg));
    }
  }
  if (trace.contains("errors")) {
    const auto& errors = trace["errors"];
    if (!errors.is_array()) throw SchemaError("$.trace.errors", "expected an array");
    auto& out = report.trace.errors.emplace();
    for (std::size_t k = 0; k < errors.size(); ++k) {
      out.push_back(as_decimal_array(errors[k], "$.trace.errors[" + std::to_string(k) + "]", cfg));
    }
  }
  return report;
}

std::string render_theorem_report(const TheoremReport& report, TraceFormat format) {
  const auto side = [](const std::optional<Real>& v) { return v ? v->str() : std::string("undefined"); };
  const auto& p = report.params;

  if (format == TraceFormat::json) {
    json doc;
    doc["theorem"] = report.theorem;
    doc["pass"] = report.pass;
    json params;
    params["d"] = p.d.str();
    if (p.max_sep) params["max_sep"] = p.max_sep->str();
    params["c"] = p.c.str();
    params["q"] = p.q.str();
    if (p.xi) params["xi"] = p.xi->str();
    if (p.A) params["A"] = p.A->str();
    if (p.S) params["S"] = p.S->str();
    doc["params"] = std::move(params);
    doc["checks"] = json::array();
    for (const auto& c : report.checks) {
      doc["checks"].push_back(json{{"name", c.name},
                                   {"root_index", opt_index(c.root_index)},
                                   {"lhs", c.lhs ? json(c.lhs->str()) : json(nullptr)},
                                   {"relation", c.relation},
                                   {"rhs", c.rhs ? json(c.rhs->str()) : json(nullptr)},
                                   {"holds", c.holds},
                                   {"gating", c.gating},
                                   {"note", c.note}});
    }
    doc["notes"] = report.notes;
    return doc.dump(2) + "\n";
  }

  const auto brief = [](const std::optional<Real>& v) {
    return v ? v->str(20) : std::string("undefined");
  };
  const char sep = format == TraceFormat::csv ? ',' : '\t';
  std::ostringstream out;
  if (format == TraceFormat::csv) {
    out << "root,holds,gating,lhs,relation,rhs,name\n";
    for (const auto& c : report.checks) {
      out << (c.root_index ? std::to_string(*c.root_index + 1) : "") << sep
          << (c.holds ? "true" : "false") << sep << (c.gating ? "true" : "false") << sep
          << side(c.lhs) << sep << c.relation << sep << side(c.rhs) << sep << '"' << c.name
          << '"' << "\n";
    }
    return out.str();
  }

  out << "Theorem " << report.theorem << ": " << (report.pass ? "PASS" : "FAIL") << "\n";
  out << "  d = " << p.d.str(20) << ", c = " << p.c.str(20) << ", q = " << p.q.str(20);
  if (p.max_sep) out << ", max_sep = " << p.max_sep->str(20);
  if (p.xi) out << ", xi = " << p.xi->str(20);
  if (p.A) out << ", A = " << p.A->str(20);
  if (p.S) out << ", S = " << p.S->str(20);
  out << "\n";
  for (const auto& c : report.checks) {
    out << "  " << (c.holds ? "ok  " : "FAIL") << (c.gating ? "" : " (advisory)") << sep
        << (c.root_index ? "i=" + std::to_string(*c.root_index + 1) : std::string("-")) << sep
        << c.name << sep << brief(c.lhs) << ' ' << c.relation << ' ' << brief(c.rhs);
    if (!c.note.empty() && c.note != "advisory") out << "  [" << c.note << "]";
    out << "\n";
  }
  for (const auto& n : report.notes) out << "  note: " << n << "\n";
  return out.str();
}

std::vector<std::string> split_csv(std::string_view text) {
  std::vector<std::string> out;
  std::string item;
  const auto flush = [&] {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    item.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else {
      item += ch;
    }
  }
  flush();
  return out;
}

std::vector<Real> parse_real_list(std::string_view text, const PrecisionConfig& cfg) {
  std::vector<Real> out;
  for (const auto& item : split_csv(text)) out.push_back(Real::parse(item, cfg));
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& item : split_csv(text)) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ParseError("expected an integer, got '" + item + "'", 0);
    }
    if (used != item.size()) throw ParseError("expected an integer, got '" + item + "'", used);
    out.push_back(value);
  }
  return out;
}

}  // namespace simulroot
