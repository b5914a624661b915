#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "simulroot/real.hpp"

namespace simulroot {

enum class Family { algebraic, trigonometric, exponential };

std::string_view to_string(Family family);
std::optional<Family> parse_family(std::string_view text);

/// Number of roots, counted with multiplicity, of a degree-n member of `family`:
/// n for algebraic polynomials, 2n for trigonometric and exponential ones.
int root_count(Family family, int degree);

/// Monic x^n + a1 x^(n-1) + ... + an. Only a1..an are stored.
class AlgebraicCoeffPoly {
 public:
  explicit AlgebraicCoeffPoly(std::vector<Real> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Real>& coeffs() const { return coeffs_; }

 private:
  std::vector<Real> coeffs_;
};

/// a0/2 + sum_k a_k cos(kx) + b_k sin(kx), with a_n^2 + b_n^2 > 0.
class TrigCoeffPoly {
 public:
  TrigCoeffPoly(Real a0, std::vector<Real> a, std::vector<Real> b);

  int degree() const { return static_cast<int>(a_.size()); }
  const Real& a0() const { return a0_; }
  const std::vector<Real>& a() const { return a_; }
  const std::vector<Real>& b() const { return b_; }

 private:
  Real a0_;
  std::vector<Real> a_;
  std::vector<Real> b_;
};

/// a0/2 + sum_k a_k cosh(kx) + b_k sinh(kx), with a_n or b_n nonzero.
class ExpCoeffPoly {
 public:
  ExpCoeffPoly(Real a0, std::vector<Real> a, std::vector<Real> b);

  int degree() const { return static_cast<int>(a_.size()); }
  const Real& a0() const { return a0_; }
  const std::vector<Real>& a() const { return a_; }
  const std::vector<Real>& b() const { return b_; }

 private:
  Real a0_;
  std::vector<Real> a_;
  std::vector<Real> b_;
};

/// Product of g(x - r_j)^alpha_j with g(t) = t, sin(t/2) or sinh(t/2) by family.
class FactoredPoly {
 public:
  FactoredPoly(Family family, std::vector<Real> roots, std::vector<int> mults);

  Family family() const { return family_; }
  const std::vector<Real>& roots() const { return roots_; }
  const std::vector<int>& mults() const { return mults_; }
  int multiplicity_sum() const;
  /// n such that multiplicity_sum() == root_count(family(), n).
  int degree() const;

 private:
  Family family_;
  std::vector<Real> roots_;
  std::vector<int> mults_;
};

using Polynomial = std::variant<AlgebraicCoeffPoly, TrigCoeffPoly, ExpCoeffPoly, FactoredPoly>;

Family family_of(const Polynomial& p);
int degree_of(const Polynomial& p);

struct ValueAndDerivative {
  Real value;
  Real derivative;
};

/// p(x) and p'(x). The algebraic coefficient form is evaluated exactly in rational
/// arithmetic and rounded once, so values near clustered roots keep full relative
/// accuracy. Factored forms use the product rule.
ValueAndDerivative eval_with_derivative(const Polynomial& p, const Real& x);

/// p(x) / p'(x). Returns exactly 0 when p(x) == 0, so a root is a fixed point.
/// Throws DerivativeZeroError when p'(x) == 0 and p(x) != 0.
Real newton_ratio(const Polynomial& p, const Real& x);

/// Monic coefficient form with the same roots and multiplicities.
/// Throws UnsupportedFamilyError for trigonometric and exponential inputs.
AlgebraicCoeffPoly expand_algebraic(const FactoredPoly& f);

}  // namespace simulroot
