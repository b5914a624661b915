#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simulroot/polys.hpp"
#include "simulroot/real.hpp"

namespace simulroot {

/// Known multiplicities alpha_1..alpha_m of the sought roots.
/// Their sum must equal root_count(family, degree).
class MultiplicityProfile {
 public:
  MultiplicityProfile(Family family, std::vector<int> mults, int degree);

  /// Profile taken from a factored polynomial's own multiplicities.
  static MultiplicityProfile of(const FactoredPoly& f);

  Family family() const { return family_; }
  int degree() const { return degree_; }
  const std::vector<int>& mults() const { return mults_; }
  std::size_t size() const { return mults_.size(); }

 private:
  Family family_;
  std::vector<int> mults_;
  int degree_;
};

/// Simultaneous approximations x_1..x_m after `k` iterations.
struct EstimateVector {
  std::vector<Real> x;
  int k = 0;
};

/// Throws CollisionError naming the first coinciding pair.
void require_distinct(const EstimateVector& estimates);

enum class Method { chebyshev, newton_baseline };

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view text);

struct SolveConfig {
  int max_iters = 50;
  /// Defaults to 10^(6 - digits) when unset.
  std::optional<Real> step_tolerance;
  PrecisionConfig precision;
  Method method = Method::chebyshev;

  Real tolerance() const;
  void validate() const;
};

struct IterationTrace {
  /// snapshots[0] is the initial vector; snapshots[k].k == k.
  std::vector<EstimateVector> snapshots;
  /// steps[k - 1][i] = |x_i^[k] - x_i^[k-1]|.
  std::vector<std::vector<Real>> steps;
  /// errors[k][i] = |x_i^[k] - true root i|, present when true roots were supplied.
  std::optional<std::vector<std::vector<Real>>> errors;
};

enum class StopReason { tolerance, max_iters, step_failure };

std::string_view to_string(StopReason reason);
std::optional<StopReason> parse_stop_reason(std::string_view text);

struct StepFailure {
  /// "collision", "derivative_zero" or "pole".
  std::string kind;
  std::optional<std::size_t> root_index;
  std::optional<std::size_t> other_index;
  std::string message;
};

struct SolveReport {
  Family family = Family::algebraic;
  Method method = Method::chebyshev;
  std::vector<int> mults;
  int digits = 64;
  IterationTrace trace;
  bool converged = false;
  StopReason stop_reason = StopReason::max_iters;
  std::optional<StepFailure> failure;

  const EstimateVector& final_estimates() const { return trace.snapshots.back(); }
};

/// Q_i'/Q_i at x_i, where Q_i is the product of the other estimates' factors:
/// sum alpha_j/(x_i - x_j), (1/2) sum alpha_j cot((x_i - x_j)/2) or
/// (1/2) sum alpha_j coth((x_i - x_j)/2) over j != i. `i` is 0-based.
Real correction_sum(Family family, const EstimateVector& estimates,
                    const MultiplicityProfile& profile, std::size_t i);

/// One total-step Chebyshev-type update:
///   x_i <- x_i - alpha_i u_i (1 + u_i Q_i'/Q_i),  u_i = p(x_i)/p'(x_i),
/// every component computed from the previous vector only.
EstimateVector step(const Polynomial& p, const EstimateVector& estimates,
                    const MultiplicityProfile& profile);

/// x_i <- x_i - alpha_i p(x_i)/p'(x_i); second-order reference method.
EstimateVector newton_baseline_step(const Polynomial& p, const EstimateVector& estimates,
                                    const MultiplicityProfile& profile);

/// Iterates until max_i |dx_i| <= tolerance or max_iters. Step failures stop the run
/// and are reported rather than thrown. When `true_roots` is given the trace records
/// per-snapshot errors.
SolveReport solve(const Polynomial& p, const MultiplicityProfile& profile,
                  const EstimateVector& init, const SolveConfig& cfg,
                  const std::optional<std::vector<Real>>& true_roots = std::nullopt);

/// Maps each value into [-pi, pi).
std::vector<Real> wrap_to_principal(std::span<const Real> x);

struct OrderEstimate {
  Real order;
  /// Positions of the triple (e_{k-1}, e_k, e_{k+1}) within the input sequence.
  std::array<std::size_t, 3> indices{};
};

/// log(e_{k+1}/e_k) / log(e_k/e_{k-1}) for the last triple of strictly positive,
/// strictly decreasing errors that all lie above `floor`.
/// Throws InsufficientDataError when no such triple exists.
OrderEstimate estimate_order(std::span<const Real> errors, const std::optional<Real>& floor = {});
Real empirical_order(std::span<const Real> errors, const std::optional<Real>& floor = {});

/// Error level below which iteration is limited by working precision: 10^(6 - digits).
Real precision_floor(const PrecisionConfig& cfg);

/// max_i errors[k][i] for every snapshot k.
std::vector<Real> max_norm_errors(const std::vector<std::vector<Real>>& errors);

}  // namespace simulroot
