#include "simulroot/solver.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "simulroot/errors.hpp"

namespace simulroot {

namespace {

void require_matching(const Polynomial& p, const EstimateVector& estimates,
                      const MultiplicityProfile& profile) {
  if (family_of(p) != profile.family()) {
    throw InvariantError("multiplicity profile is " + std::string(to_string(profile.family())) +
                         " but the polynomial is " + std::string(to_string(family_of(p))));
  }
  if (estimates.x.size() != profile.size()) {
    throw InvariantError("expected " + std::to_string(profile.size()) + " estimates, got " +
                         std::to_string(estimates.x.size()));
  }
}

Real newton_ratio_at(const Polynomial& p, const EstimateVector& estimates, std::size_t i) {
  try {
    return newton_ratio(p, estimates.x[i]);
  } catch (const DerivativeZeroError& e) {
    throw e.with_index(i);
  }
}

}  // namespace

MultiplicityProfile::MultiplicityProfile(Family family, std::vector<int> mults, int degree)
    : family_(family), mults_(std::move(mults)), degree_(degree) {
  if (degree_ < 1) throw InvariantError("degree must be positive");
  if (mults_.empty()) throw InvariantError("multiplicity profile is empty");
  for (std::size_t j = 0; j < mults_.size(); ++j) {
    if (mults_[j] < 1) {
      throw InvariantError("multiplicity " + std::to_string(j + 1) + " must be positive");
    }
  }
  const int sum = std::accumulate(mults_.begin(), mults_.end(), 0);
  const int expected = root_count(family_, degree_);
  if (sum != expected) {
    throw InvariantError("multiplicities sum to " + std::to_string(sum) + " but a degree-" +
                         std::to_string(degree_) + " " + std::string(to_string(family_)) +
                         " polynomial has " + std::to_string(expected) + " roots");
  }
}

MultiplicityProfile MultiplicityProfile::of(const FactoredPoly& f) {
  return MultiplicityProfile(f.family(), f.mults(), f.degree());
}

void require_distinct(const EstimateVector& estimates) {
  const auto& x = estimates.x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) throw CollisionError(i, j);
    }
  }
}

std::string_view to_string(Method method) {
  return method == Method::chebyshev ? "chebyshev" : "newton_baseline";
}

std::optional<Method> parse_method(std::string_view text) {
  if (text == "chebyshev") return Method::chebyshev;
  if (text == "newton_baseline") return Method::newton_baseline;
  return std::nullopt;
}

Real SolveConfig::tolerance() const {
  if (step_tolerance) return *step_tolerance;
  return Real::pow10(6 - precision.digits, precision);
}

void SolveConfig::validate() const {
  precision.validate();
  if (max_iters < 1) throw InvariantError("max_iters must be at least 1");
  if (step_tolerance && !(*step_tolerance > 0)) {
    throw InvariantError("step tolerance must be positive");
  }
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::tolerance: return "tolerance";
    case StopReason::max_iters: return "max_iters";
    case StopReason::step_failure: return "step_failure";
  }
  return "?";
}

std::optional<StopReason> parse_stop_reason(std::string_view text) {
  if (text == "tolerance") return StopReason::tolerance;
  if (text == "max_iters") return StopReason::max_iters;
  if (text == "step_failure") return StopReason::step_failure;
  return std::nullopt;
}

Real correction_sum(Family family, const EstimateVector& estimates,
                    const MultiplicityProfile& profile, std::size_t i) {
  const auto& x = estimates.x;
  if (i >= x.size()) throw std::out_of_range("root index out of range");
  if (x.size() != profile.size()) {
    throw InvariantError("estimate vector and multiplicity profile differ in length");
  }
  Real sum(x[i].precision());
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j == i) continue;
    if (x[i] == x[j]) throw CollisionError(std::min(i, j), std::max(i, j));
    const Real diff = x[i] - x[j];
    const long alpha = profile.mults()[j];
    switch (family) {
      case Family::algebraic:
        sum += alpha / diff;
        break;
      case Family::trigonometric:
        sum += cot(diff / 2) * alpha;
        break;
      case Family::exponential:
        sum += coth(diff / 2) * alpha;
        break;
    }
  }
  if (family != Family::algebraic) sum = sum / 2;
  return sum;
}

EstimateVector step(const Polynomial& p, const EstimateVector& estimates,
                    const MultiplicityProfile& profile) {
  require_matching(p, estimates, profile);
  require_distinct(estimates);
  const Family family = family_of(p);

  EstimateVector next{{}, estimates.k + 1};
  next.x.reserve(estimates.x.size());
  for (std::size_t i = 0; i < estimates.x.size(); ++i) {
    const Real u = newton_ratio_at(p, estimates, i);
    const Real q = correction_sum(family, estimates, profile, i);
    const long alpha = profile.mults()[i];
    next.x.push_back(estimates.x[i] - u * (1 + u * q) * alpha);
  }
  return next;
}

EstimateVector newton_baseline_step(const Polynomial& p, const EstimateVector& estimates,
                                    const MultiplicityProfile& profile) {
  require_matching(p, estimates, profile);
  require_distinct(estimates);

  EstimateVector next{{}, estimates.k + 1};
  next.x.reserve(estimates.x.size());
  for (std::size_t i = 0; i < estimates.x.size(); ++i) {
    const Real u = newton_ratio_at(p, estimates, i);
    next.x.push_back(estimates.x[i] - u * static_cast<long>(profile.mults()[i]));
  }
  return next;
}

SolveReport solve(const Polynomial& p, const MultiplicityProfile& profile,
                  const EstimateVector& init, const SolveConfig& cfg,
                  const std::optional<std::vector<Real>>& true_roots) {
  cfg.validate();
  require_matching(p, init, profile);
  require_distinct(init);
  if (true_roots && true_roots->size() != init.x.size()) {
    throw InvariantError("true roots and estimates differ in length");
  }

  SolveReport report;
  report.family = family_of(p);
  report.method = cfg.method;
  report.mults = profile.mults();
  report.digits = cfg.precision.digits;

  const auto errors_of = [&](const EstimateVector& v) {
    std::vector<Real> e;
    e.reserve(v.x.size());
    for (std::size_t i = 0; i < v.x.size(); ++i) e.push_back(abs(v.x[i] - (*true_roots)[i]));
    return e;
  };

  EstimateVector current{{}, 0};
  for (const auto& x : init.x) current.x.push_back(x.with_precision(cfg.precision));
  if (true_roots) report.trace.errors.emplace().push_back(errors_of(current));
  report.trace.snapshots.push_back(current);

  const Real tol = cfg.tolerance();
  report.stop_reason = StopReason::max_iters;
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    EstimateVector next;
    try {
      next = cfg.method == Method::chebyshev ? step(p, current, profile)
                                             : newton_baseline_step(p, current, profile);
    } catch (const CollisionError& e) {
      report.failure = StepFailure{"collision", e.first(), e.second(), e.what()};
    } catch (const DerivativeZeroError& e) {
      report.failure = StepFailure{"derivative_zero", e.root_index(), std::nullopt, e.what()};
    } catch (const PoleError& e) {
      report.failure = StepFailure{"pole", std::nullopt, std::nullopt, e.what()};
    }
    if (report.failure) {
      report.stop_reason = StopReason::step_failure;
      break;
    }
    for (std::size_t i = 0; i < next.x.size(); ++i) {
      if (!next.x[i].is_finite()) {
        report.failure = StepFailure{"non_finite", i, std::nullopt,
                                     "estimate x" + std::to_string(i + 1) + " is not finite"};
      }
    }
    if (report.failure) {
      report.stop_reason = StopReason::step_failure;
      break;
    }

    std::vector<Real> steps;
    steps.reserve(next.x.size());
    Real largest(cfg.precision);
    for (std::size_t i = 0; i < next.x.size(); ++i) {
      steps.push_back(abs(next.x[i] - current.x[i]));
      largest = max(largest, steps.back());
    }
    report.trace.steps.push_back(std::move(steps));
    if (true_roots) report.trace.errors->push_back(errors_of(next));
    report.trace.snapshots.push_back(next);
    current = std::move(next);

    if (largest <= tol) {
      report.converged = true;
      report.stop_reason = StopReason::tolerance;
      break;
    }
  }
  return report;
}

std::vector<Real> wrap_to_principal(std::span<const Real> x) {
  std::vector<Real> out;
  out.reserve(x.size());
  for (const auto& v : x) {
    const Real pi = Real::pi(v.precision());
    const Real period = pi * 2;
    out.push_back(v - period * floor((v + pi) / period));
  }
  return out;
}

OrderEstimate estimate_order(std::span<const Real> errors, const std::optional<Real>& floor) {
  const auto admissible = [&](const Real& e) {
    return e > 0 && e.is_finite() && (!floor || e > *floor);
  };
  for (std::size_t k = errors.size(); k-- > 2;) {
    const Real& e0 = errors[k - 2];
    const Real& e1 = errors[k - 1];
    const Real& e2 = errors[k];
    if (admissible(e0) && admissible(e1) && admissible(e2) && e0 > e1 && e1 > e2) {
      return {log(e2 / e1) / log(e1 / e0), {k - 2, k - 1, k}};
    }
  }
  throw InsufficientDataError("need three strictly decreasing positive errors above the precision "
                              "floor; got " +
                              std::to_string(errors.size()) + " values");
}

Real empirical_order(std::span<const Real> errors, const std::optional<Real>& floor) {
  return estimate_order(errors, floor).order;
}

Real precision_floor(const PrecisionConfig& cfg) { return Real::pow10(6 - cfg.digits, cfg); }

std::vector<Real> max_norm_errors(const std::vector<std::vector<Real>>& errors) {
  std::vector<Real> out;
  out.reserve(errors.size());
  for (const auto& row : errors) {
    Real m(row.empty() ? PrecisionConfig{} : row.front().precision());
    for (const auto& e : row) m = max(m, e);
    out.push_back(m);
  }
  return out;
}

}  // namespace simulroot
