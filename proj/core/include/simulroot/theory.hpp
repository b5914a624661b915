#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simulroot/real.hpp"

namespace simulroot {

/// Constants entering the convergence theorems. Optional fields apply to one theorem only.
struct SeparationParams {
  Real d;
  std::optional<Real> max_sep;  // trigonometric
  Real c;
  Real q;
  std::optional<Real> xi;  // trigonometric
  std::optional<Real> A;   // trigonometric: min{|sin(xi/2)|, |sin(d/2 - c)|}
  std::optional<Real> S;   // exponential: sinh((d - 2c)/2)
};

/// One inequality `lhs relation rhs` with both sides evaluated.
/// Sides are absent when the inequality is undefined (e.g. a division by zero).
struct InequalityCheck {
  std::string name;
  std::optional<std::size_t> root_index;  // 0-based; absent for side conditions
  std::optional<Real> lhs;
  std::string relation;  // "<" or ">"
  std::optional<Real> rhs;
  bool holds = false;
  /// Advisory checks are reported but do not affect TheoremReport::pass.
  bool gating = true;
  std::string note;
};

struct TheoremReport {
  int theorem = 1;
  SeparationParams params;
  std::vector<InequalityCheck> checks;
  std::vector<std::string> notes;
  /// True iff every gating check holds.
  bool pass = false;
};

/// Throws UndefinedSeparationError for fewer than two roots.
Real min_separation(std::span<const Real> roots);
Real max_separation(std::span<const Real> roots);

/// Algebraic case: 0 < q < 1, c > 0, d - 2c > 0 and, for every alpha_i,
/// c^2 (n - alpha_i) < (alpha_i d - 2nc)(d - 2c).
TheoremReport check_theorem1(int n, std::span<const int> mults, const Real& d, const Real& c,
                             const Real& q);

/// Trigonometric case. Side conditions q < 1, 2c < xi, d - 2c > 0 and
/// max_sep < 2 pi - 2 xi gate the verdict together with the per-root contraction
/// inequality in the form the convergence argument actually requires
///   c^2 K_i < D_i^2,  D_i = alpha_i (1 - c^2/8) - (c/2)(2n - alpha_i)/A > 0.
/// A variant with "+" in D_i and an alpha_i/4 factor is evaluated too, as an
/// advisory check.
TheoremReport check_theorem2(int n, std::span<const int> mults, const Real& d,
                             const Real& max_sep, const Real& c, const Real& q, const Real& xi);

/// Exponential case, S = sinh((d - 2c)/2). "cosh^-1 c" is read as 1/cosh(c).
TheoremReport check_theorem3(int n, std::span<const int> mults, const Real& d, const Real& c,
                             const Real& q);

/// c q^(3^k). Returns 0 when q^(3^k) underflows any representable exponent.
Real error_bound(const Real& c, const Real& q, int k);

}  // namespace simulroot
