#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simulroot/polys.hpp"
#include "simulroot/real.hpp"
#include "simulroot/solver.hpp"

namespace simulroot {

/// A worked example with its reference iteration table.
///
/// `golden[k][i]` holds x_i^[k] exactly as printed, including entries whose digit
/// counts are inconsistent with the rest of the table. `notes` records provenance
/// for individual entries as (k, i, text).
struct WorkedExample {
  int table = 0;
  Family family = Family::algebraic;
  std::string expr;
  std::vector<std::string> init;
  std::vector<std::string> true_roots;
  int iterations = 0;
  std::vector<std::vector<std::string>> golden;

  struct EntryNote {
    int k;
    std::size_t i;
    std::string text;
  };
  std::vector<EntryNote> notes;

  FactoredPoly polynomial(const PrecisionConfig& cfg) const;
  EstimateVector initial_estimates(const PrecisionConfig& cfg) const;
  std::vector<Real> roots(const PrecisionConfig& cfg) const;
};

std::span<const WorkedExample> worked_examples();
/// Throws std::out_of_range unless table is 1, 2 or 3.
const WorkedExample& worked_example(int table);

/// Reference digits are compared on their first 18 significant digits.
inline constexpr int kGoldenSignificantDigits = 18;

/// Keeps the first `digits` significant digits of a decimal numeral, truncating.
std::string truncate_significant(std::string_view numeral, int digits);

struct EntryComparison {
  int k = 0;
  std::size_t i = 0;
  std::string printed;
  Real reference;  // printed value cut to kGoldenSignificantDigits
  Real computed;
  Real discrepancy;
  bool within = false;
  std::string note;
};

struct Reproduction {
  const WorkedExample* example = nullptr;
  SolveReport report;
  std::vector<EntryComparison> entries;
  Real max_discrepancy;
  bool entries_within = false;
  Real final_max_error;
  bool final_within = false;
  double seconds = 0.0;

  bool ok() const { return entries_within && final_within; }
};

/// Runs the example for its tabulated number of iterations and diffs every printed
/// entry against the computed trace.
Reproduction reproduce_table(int table, const PrecisionConfig& cfg, const Real& entry_tolerance,
                             const Real& final_tolerance);

}  // namespace simulroot
