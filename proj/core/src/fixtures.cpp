#include "simulroot/fixtures.hpp"

#include <array>
#include <cctype>
#include <chrono>
#include <stdexcept>

#include "simulroot/ingest.hpp"

namespace simulroot {

namespace {

// Golden digits are copied verbatim from the reference tables.
const std::array<WorkedExample, 3>& examples() {
  static const std::array<WorkedExample, 3> all{{
      {1,
       Family::algebraic,
       "(x+2)^2*(x-1)*(x-3)^3",
       {"-3", "0.1", "4"},
       {"-2", "1", "3"},
       4,
       {
           {"-3.000000000000000000", "0.100000000000000000", "4.000000000000000000"},
           {"-2.074075484632669380", "1.025215703994304140", "3.060848242666424480"},
           {"-2.000104622198420050", "0.999992663820262272", "3.000018360022861370"},
           {"-2.0000000000000256950", "1.000000000000000240", "3.000000000000001700"},
           {"-2.0000000000000000000", "1.0000000000000000000", "3.0000000000000000000"},
       },
       {{3, 0,
         "printed with 20 significant digits; recomputation gives -2.000000000000256952 "
         "(one fewer zero), a difference of 2.3e-13"}}},
      {2,
       Family::trigonometric,
       "sin((x-1)/2)^3*sin((x-2)/2)^2*sin((x-2.5)/2)",
       {"0.2", "1.7", "3"},
       {"1", "2", "2.5"},
       5,
       {
           {"0.20000000000000000000", "1.70000000000000000000", "3.00000000000000000000"},
           {"1.024086327992702930", "2.102113721613658320", "2.719836743505084910"},
           {"0.999943864177073621", "1.994771659856962850", "2.539910728921209960"},
           {"0.999999999989823071", "1.999997954513862020", "2.501199355320121160"},
           {"1.00000000000000000000", "1.99999999999989780", "2.500000051660666960"},
           {"1.00000000000000000000", "2.00000000000000000000", "2.50000000000000000000"},
       },
       {{4, 1,
         "printed with 18 significant digits; recomputation gives 1.999999999999989775 "
         "(one more nine), a difference of 9.2e-14"}}},
      {3,
       Family::exponential,
       "sinh((x+2)/2)^2*sinh((x-3)/2)^2",
       {"-1.5", "3.4"},
       {"-2", "3"},
       4,
       {
           {"-1.50000000000000000000", "3.40000000000000000000"},
           {"-1.936759338912996590", "3.015817214722672100"},
           {"-1.999910032597308230", "3.000001221431438670"},
           {"-1.999999999999752340", "3.000000000000000000"},
           {"-2.00000000000000000000", "3.000000000000000000"},
       },
       {}},
  }};
  return all;
}

}  // namespace

FactoredPoly WorkedExample::polynomial(const PrecisionConfig& cfg) const {
  return parse_expression(expr, cfg);
}

EstimateVector WorkedExample::initial_estimates(const PrecisionConfig& cfg) const {
  EstimateVector v;
  for (const auto& s : init) v.x.push_back(Real::parse(s, cfg));
  return v;
}

std::vector<Real> WorkedExample::roots(const PrecisionConfig& cfg) const {
  std::vector<Real> out;
  for (const auto& s : true_roots) out.push_back(Real::parse(s, cfg));
  return out;
}

std::span<const WorkedExample> worked_examples() { return examples(); }

const WorkedExample& worked_example(int table) {
  if (table < 1 || table > 3) throw std::out_of_range("table must be 1, 2 or 3");
  return examples()[static_cast<std::size_t>(table - 1)];
}

std::string truncate_significant(std::string_view numeral, int digits) {
  std::string out;
  int kept = 0;
  bool started = false;
  bool in_exponent = false;
  for (char ch : numeral) {
    if (ch == 'e' || ch == 'E') in_exponent = true;
    if (in_exponent || !std::isdigit(static_cast<unsigned char>(ch))) {
      out += ch;
      continue;
    }
    if (ch != '0') started = true;
    if (!started) {
      out += ch;
      continue;
    }
    if (kept < digits) {
      out += ch;
      ++kept;
    } else {
      out += '0';
    }
  }
  return out;
}

Reproduction reproduce_table(int table, const PrecisionConfig& cfg, const Real& entry_tolerance,
                             const Real& final_tolerance) {
  const WorkedExample& ex = worked_example(table);
  const FactoredPoly poly = ex.polynomial(cfg);
  const auto profile = MultiplicityProfile::of(poly);
  const auto truth = ex.roots(cfg);

  SolveConfig sc;
  sc.precision = cfg;
  sc.max_iters = ex.iterations;

  Reproduction out;
  out.example = &ex;
  const auto t0 = std::chrono::steady_clock::now();
  out.report = solve(Polynomial(poly), profile, ex.initial_estimates(cfg), sc, truth);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  out.max_discrepancy = Real(cfg);
  out.entries_within = true;
  const auto& snaps = out.report.trace.snapshots;
  for (std::size_t k = 0; k < ex.golden.size(); ++k) {
    for (std::size_t i = 0; i < ex.golden[k].size(); ++i) {
      EntryComparison e;
      e.k = static_cast<int>(k);
      e.i = i;
      e.printed = ex.golden[k][i];
      e.reference = Real::parse(truncate_significant(e.printed, kGoldenSignificantDigits), cfg);
      if (k < snaps.size()) {
        e.computed = snaps[k].x[i];
        e.discrepancy = abs(e.computed - e.reference);
        e.within = e.discrepancy <= entry_tolerance;
      } else {
        e.computed = Real(cfg);
        e.discrepancy = Real(cfg);
        e.within = false;
        e.note = "iteration not reached";
      }
      for (const auto& n : ex.notes) {
        if (n.k == e.k && n.i == i) e.note = n.text;
      }
      out.max_discrepancy = max(out.max_discrepancy, e.discrepancy);
      out.entries_within = out.entries_within && e.within;
      out.entries.push_back(std::move(e));
    }
  }

  out.final_max_error = Real(cfg);
  const auto& last = snaps.back();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    out.final_max_error = max(out.final_max_error, abs(last.x[i] - truth[i]));
  }
  out.final_within = static_cast<int>(snaps.size()) == ex.iterations + 1 &&
                     out.final_max_error <= final_tolerance;
  return out;
}

}  // namespace simulroot
