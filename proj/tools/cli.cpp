#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "simulroot/errors.hpp"
#include "simulroot/fixtures.hpp"
#include "simulroot/ingest.hpp"
#include "simulroot/solver.hpp"
#include "simulroot/theory.hpp"

namespace simulroot::cli {

namespace {

/// Raised for flag combinations the parser cannot express.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string sci(const Real& v, int sig = 3) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", sig - 1, v.data());
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

PrecisionConfig precision_from(std::optional<int> flag, const Environment& env) {
  PrecisionConfig cfg;
  if (flag) {
    cfg.digits = *flag;
  } else if (env.digits) {
    try {
      std::size_t used = 0;
      cfg.digits = std::stoi(*env.digits, &used);
      if (used != env.digits->size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("SIMULROOT_DIGITS must be an integer, got '" + *env.digits + "'");
    }
  }
  cfg.validate();
  return cfg;
}

struct SolveFlags {
  std::string input;
  std::string expr;
  std::string init;
  std::string mults;
  std::string true_roots;
  std::string tolerance;
  std::optional<int> digits;
  std::optional<int> max_iters;
  std::string format = "table";
  std::optional<std::string> method;
  int table_decimals = 18;
  bool wrap = false;
};

int cmd_solve(const SolveFlags& f, const Environment& env, std::ostream& out, std::ostream& err) {
  const auto format = parse_trace_format(f.format);
  if (!format) throw UsageError("--format must be table, csv or json");
  if (f.input.empty() == f.expr.empty()) throw UsageError("give either --input FILE or --expr STR");

  std::optional<Polynomial> poly;
  std::vector<int> mults;
  EstimateVector init;
  SolveConfig cfg;
  bool explicit_budget = f.max_iters.has_value();

  if (!f.input.empty()) {
    if (!f.init.empty() || !f.mults.empty()) throw UsageError("--init/--mults conflict with --input");
    std::optional<int> digits = f.digits;
    if (!digits && env.digits) digits = precision_from(std::nullopt, env).digits;
    const std::string text = read_file(f.input);
    ProblemSpec spec = parse_problem(text, digits);
    explicit_budget = explicit_budget || nlohmann::json::parse(text).contains("max_iters");
    cfg = spec.config;
    mults = spec.mults;
    init = spec.initial_estimates();
    poly.emplace(spec.polynomial);
  } else {
    if (f.init.empty()) throw UsageError("--expr requires --init");
    cfg.precision = precision_from(f.digits, env);
    FactoredPoly fp = parse_expression(f.expr, cfg.precision);
    mults = f.mults.empty() ? fp.mults() : parse_int_list(f.mults);
    if (mults.size() != fp.roots().size()) {
      throw UsageError("--mults has " + std::to_string(mults.size()) + " entries but the expression has " +
                       std::to_string(fp.roots().size()) + " roots");
    }
    init.x = parse_real_list(f.init, cfg.precision);
    poly.emplace(std::move(fp));
  }

  if (f.max_iters) cfg.max_iters = *f.max_iters;
  if (!f.tolerance.empty()) cfg.step_tolerance = Real::parse(f.tolerance, cfg.precision);
  if (f.method) {
    const auto method = parse_method(*f.method);
    if (!method) throw UsageError("--method must be chebyshev or newton_baseline");
    cfg.method = *method;
  }

  const MultiplicityProfile profile(family_of(*poly), mults, degree_of(*poly));
  std::optional<std::vector<Real>> truth;
  if (!f.true_roots.empty()) truth = parse_real_list(f.true_roots, cfg.precision);

  SolveReport report = solve(*poly, profile, init, cfg, truth);
  if (f.wrap && report.family == Family::trigonometric) {
    for (auto& snap : report.trace.snapshots) snap.x = wrap_to_principal(snap.x);
  }

  RenderOptions options;
  options.table_decimals = f.table_decimals;
  out << render_trace(report, *format, options);

  if (report.failure) {
    err << "step failure: " << report.failure->message << "\n";
    return kNotConverged;
  }
  if (report.converged) return kSuccess;
  if (explicit_budget) return kSuccess;
  err << "not converged after " << cfg.max_iters << " iterations\n";
  return kNotConverged;
}

struct VerifyFlags {
  int theorem = 0;
  std::string roots;
  std::string mults;
  std::string d;
  std::string max_sep;
  std::string c;
  std::string q;
  std::string xi;
  std::optional<int> n;
  std::optional<int> digits;
  std::string format = "table";
};

int cmd_verify(const VerifyFlags& f, const Environment& env, std::ostream& out) {
  const auto format = parse_trace_format(f.format);
  if (!format) throw UsageError("--format must be table, csv or json");
  if (f.theorem < 1 || f.theorem > 3) throw UsageError("--theorem must be 1, 2 or 3");
  if (f.mults.empty() || f.c.empty() || f.q.empty()) throw UsageError("--mults, --c and --q are required");
  if (f.theorem == 2 && f.xi.empty()) throw UsageError("theorem 2 requires --xi");
  if (f.roots.empty() && f.d.empty()) throw UsageError("give --roots or --d");

  const PrecisionConfig cfg = precision_from(f.digits, env);
  const std::vector<int> mults = parse_int_list(f.mults);
  const Real c = Real::parse(f.c, cfg);
  const Real q = Real::parse(f.q, cfg);

  std::optional<Real> d;
  std::optional<Real> max_sep;
  if (!f.roots.empty()) {
    const auto roots = parse_real_list(f.roots, cfg);
    if (roots.size() != mults.size()) throw UsageError("--roots and --mults differ in length");
    d = min_separation(roots);
    max_sep = max_separation(roots);
  }
  if (!f.d.empty()) d = Real::parse(f.d, cfg);
  if (!f.max_sep.empty()) max_sep = Real::parse(f.max_sep, cfg);
  if (f.theorem == 2 && !max_sep) throw UsageError("theorem 2 requires --roots or --max-sep");

  const int sum = std::accumulate(mults.begin(), mults.end(), 0);
  int n = sum;
  if (f.n) {
    n = *f.n;
  } else if (f.theorem != 1) {
    if (sum % 2 != 0) throw UsageError("multiplicities must sum to 2n; pass --n explicitly");
    n = sum / 2;
  }

  TheoremReport report;
  switch (f.theorem) {
    case 1: report = check_theorem1(n, mults, *d, c, q); break;
    case 2: report = check_theorem2(n, mults, *d, *max_sep, c, q, Real::parse(f.xi, cfg)); break;
    default: report = check_theorem3(n, mults, *d, c, q); break;
  }
  out << render_theorem_report(report, *format);
  return report.pass ? kSuccess : kVerificationFailed;
}

struct OrderFlags {
  std::string input;
  std::string true_roots;
  std::string floor;
};

int cmd_order(const OrderFlags& f, std::ostream& out, std::ostream& err) {
  const SolveReport report = parse_report(read_file(f.input));
  PrecisionConfig cfg;
  cfg.digits = report.digits;
  const auto truth = parse_real_list(f.true_roots, cfg);
  const std::size_t m = report.trace.snapshots.front().x.size();
  if (truth.size() != m) throw UsageError("--true-roots has the wrong number of entries");
  const Real floor = f.floor.empty() ? precision_floor(cfg) : Real::parse(f.floor, cfg);

  std::vector<std::vector<Real>> errors;
  for (const auto& snap : report.trace.snapshots) {
    std::vector<Real> row;
    for (std::size_t i = 0; i < m; ++i) row.push_back(abs(snap.x[i] - truth[i]));
    errors.push_back(std::move(row));
  }

  const auto describe = [&](const std::string& label, const std::vector<Real>& seq) {
    out << std::left << std::setw(6) << label;
    try {
      const auto est = estimate_order(seq, floor);
      out << est.order.fixed(4) << "  k=(" << est.indices[0] << "," << est.indices[1] << ","
          << est.indices[2] << ")  e=(" << sci(seq[est.indices[0]]) << ", "
          << sci(seq[est.indices[1]]) << ", " << sci(seq[est.indices[2]]) << ")\n";
      return true;
    } catch (const InsufficientDataError&) {
      out << "n/a (insufficient data)\n";
      return false;
    }
  };

  out << "root  order  triple\n";
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Real> seq;
    for (const auto& row : errors) seq.push_back(row[i]);
    describe("x" + std::to_string(i + 1), seq);
  }
  if (!describe("max", max_norm_errors(errors))) {
    err << "insufficient data: need three decreasing errors above " << sci(floor) << "\n";
    return kNotConverged;
  }
  return kSuccess;
}

struct ReproduceFlags {
  int table = 0;
  std::optional<int> digits;
};

int cmd_reproduce(const ReproduceFlags& f, const Environment& env, std::ostream& out) {
  if (f.table < 1 || f.table > 3) throw UsageError("--table must be 1, 2 or 3");
  const PrecisionConfig cfg = precision_from(f.digits, env);
  const Real entry_tol = Real::parse("1e-14", cfg);
  const Real final_tol = Real::parse("1e-18", cfg);
  const Reproduction r = reproduce_table(f.table, cfg, entry_tol, final_tol);

  out << "Table " << f.table << ": " << r.example->expr << ", " << r.example->iterations
      << " iterations at " << cfg.digits << " digits\n";
  out << render_trace(r.report, TraceFormat::table);
  out << "\nk  i  printed                    computed                   |diff|     status\n";
  for (const auto& e : r.entries) {
    out << e.k << "  " << (e.i + 1) << "  " << std::left << std::setw(25) << e.printed << "  "
        << std::setw(25) << e.computed.fixed(20) << "  " << std::setw(9) << sci(e.discrepancy)
        << "  " << (e.within ? "ok" : "MISMATCH");
    if (!e.note.empty()) out << "  [" << e.note << "]";
    out << "\n";
  }
  out << "max discrepancy: " << sci(r.max_discrepancy) << " (tolerance 1e-14)\n";
  out << "final max error: " << sci(r.final_max_error) << " (tolerance 1e-18)\n";
  out << "result: " << (r.ok() ? "PASS" : "FAIL") << "\n";
  return r.ok() ? kSuccess : kVerificationFailed;
}

}  // namespace

Environment Environment::from_process() {
  Environment env;
  if (const char* v = std::getenv("SIMULROOT_DIGITS")) env.digits = std::string(v);
  return env;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env) {
  CLI::App app{"Simultaneous Chebyshev-type root finder for algebraic, trigonometric and "
               "exponential polynomials with known multiplicities",
               "simulroot"};
  app.require_subcommand(1, 1);

  SolveFlags sf;
  auto* solve_cmd = app.add_subcommand("solve", "Iterate to all roots of a polynomial");
  solve_cmd->add_option("--input", sf.input, "JSON problem file");
  solve_cmd->add_option("--expr", sf.expr, "Factored expression, e.g. \"(x+2)^2*(x-1)\"");
  solve_cmd->add_option("--init", sf.init, "Comma-separated initial estimates");
  solve_cmd->add_option("--mults", sf.mults, "Comma-separated multiplicities");
  solve_cmd->add_option("--digits", sf.digits, "Working precision in decimal digits");
  solve_cmd->add_option("--max-iters", sf.max_iters, "Iteration budget");
  solve_cmd->add_option("--tolerance", sf.tolerance, "Step tolerance (default 1e-(digits-6))");
  solve_cmd->add_option("--format", sf.format, "table | csv | json");
  solve_cmd->add_option("--method", sf.method, "chebyshev | newton_baseline");
  solve_cmd->add_option("--true-roots", sf.true_roots, "Record errors against these roots");
  solve_cmd->add_option("--table-decimals", sf.table_decimals, "Decimals in table output");
  solve_cmd->add_flag("--wrap", sf.wrap, "Report trigonometric roots in [-pi, pi)");

  VerifyFlags vf;
  auto* verify_cmd = app.add_subcommand("verify", "Check the hypotheses of a convergence theorem");
  verify_cmd->add_option("--theorem", vf.theorem, "1 (algebraic), 2 (trigonometric), 3 (exponential)")
      ->required();
  verify_cmd->add_option("--roots", vf.roots, "Comma-separated exact roots");
  verify_cmd->add_option("--d", vf.d, "Minimum root separation");
  verify_cmd->add_option("--max-sep", vf.max_sep, "Maximum root separation (theorem 2)");
  verify_cmd->add_option("--mults", vf.mults, "Comma-separated multiplicities");
  verify_cmd->add_option("--c", vf.c, "Constant c");
  verify_cmd->add_option("--q", vf.q, "Contraction constant q");
  verify_cmd->add_option("--xi", vf.xi, "Constant xi (theorem 2)");
  verify_cmd->add_option("--n", vf.n, "Degree n (default from multiplicities)");
  verify_cmd->add_option("--digits", vf.digits, "Working precision in decimal digits");
  verify_cmd->add_option("--format", vf.format, "table | csv | json");

  OrderFlags of;
  auto* order_cmd = app.add_subcommand("order", "Estimate the empirical order of convergence");
  order_cmd->add_option("--input", of.input, "Trace JSON written by solve --format json")->required();
  order_cmd->add_option("--true-roots", of.true_roots, "Comma-separated exact roots")->required();
  order_cmd->add_option("--floor", of.floor, "Ignore errors at or below this level");

  ReproduceFlags rf;
  auto* repro_cmd = app.add_subcommand("reproduce", "Re-run a worked example and diff it against its reference table");
  repro_cmd->add_option("--table", rf.table, "1, 2 or 3")->required();
  repro_cmd->add_option("--digits", rf.digits, "Working precision in decimal digits");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(sf, env, out, err);
    if (*verify_cmd) return cmd_verify(vf, env, out);
    if (*order_cmd) return cmd_order(of, out, err);
    if (*repro_cmd) return cmd_reproduce(rf, env, out);
  } catch (const InsufficientDataError& e) {
    err << "error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace simulroot::cli
