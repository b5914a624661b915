#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simulroot/polys.hpp"
#include "simulroot/real.hpp"
#include "simulroot/solver.hpp"
#include "simulroot/theory.hpp"

namespace simulroot {

/// Parses a product of factored-form bases:
///
///   PRODUCT := FACTOR ('*' FACTOR)*
///   FACTOR  := BASE ('^' INT)?
///   BASE    := '(' 'x' SIGN NUM ')'
///            | 'sin((x' SIGN NUM ')/2)'
///            | 'sinh((x' SIGN NUM ')/2)'
///
/// Whitespace is insignificant. `(x+2)` contributes the root -2.
/// Throws ParseError (with position), MixedFamilyError or DuplicateRootError.
FactoredPoly parse_expression(std::string_view text, const PrecisionConfig& cfg = {});

/// Canonical text for a factored polynomial; parse_expression inverts it.
std::string print_expression(const FactoredPoly& f);

enum class PolyForm { factored, coefficients };

/// A validated problem file.
struct ProblemSpec {
  Family family;
  PolyForm form;
  std::optional<std::string> expr;
  Polynomial polynomial;
  std::vector<int> mults;
  std::vector<Real> init;
  SolveConfig config;

  MultiplicityProfile profile() const;
  EstimateVector initial_estimates() const;
};

/// Parses and validates the JSON problem schema:
///   { "family", "expr"?, "coefficients"?: {"a0", "a", "b"}, "mults", "init",
///     "digits"?, "max_iters"?, "tolerance"?, "method"? }
/// Numeric values must be decimal strings. Schema violations raise SchemaError with a
/// JSON path; multiplicity and collision violations raise InvariantError / CollisionError.
ProblemSpec parse_problem(std::string_view bytes, std::optional<int> digits_override = {});

enum class TraceFormat { table, csv, json };

std::optional<TraceFormat> parse_trace_format(std::string_view text);

struct RenderOptions {
  /// Digits after the decimal point in table output.
  int table_decimals = 18;
};

/// Renders a solve report. Tables mirror the printed iteration tables; csv and json
/// carry canonical decimal strings at the report's precision.
std::string render_trace(const SolveReport& report, TraceFormat format,
                         const RenderOptions& options = {});

/// Inverse of render_trace(..., TraceFormat::json).
SolveReport parse_report(std::string_view bytes);

std::string render_theorem_report(const TheoremReport& report, TraceFormat format);

/// Splits "a, b ,c" on commas and trims each item.
std::vector<std::string> split_csv(std::string_view text);
std::vector<Real> parse_real_list(std::string_view text, const PrecisionConfig& cfg);
std::vector<int> parse_int_list(std::string_view text);

}  // namespace simulroot
