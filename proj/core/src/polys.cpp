#include "simulroot/polys.hpp"

#include <gmp.h>

#include <numeric>
#include <string>

#include "simulroot/errors.hpp"

namespace simulroot {

namespace {

// RAII wrapper over an mpq_t, used for exact coefficient-form arithmetic.
class Rational {
 public:
  Rational() { mpq_init(q_); }
  explicit Rational(const Real& x) : Rational() { mpfr_get_q(q_, x.data()); }
  Rational(const Rational& other) : Rational() { mpq_set(q_, other.q_); }
  Rational& operator=(const Rational& other) {
    mpq_set(q_, other.q_);
    return *this;
  }
  ~Rational() { mpq_clear(q_); }

  mpq_ptr get() { return q_; }
  mpq_srcptr get() const { return q_; }

  Real to_real(const PrecisionConfig& cfg) const {
    Real r(cfg);
    mpfr_set_q(r.data(), q_, MPFR_RNDN);
    return r;
  }

 private:
  mpq_t q_;
};

void require_finite_coeffs(const std::vector<Real>& v, const char* what) {
  for (const auto& c : v) {
    if (!c.is_finite()) throw InvariantError(std::string(what) + " coefficients must be finite");
  }
}

ValueAndDerivative eval_algebraic(const AlgebraicCoeffPoly& p, const Real& x) {
  // Horner on value and derivative simultaneously, exactly.
  const Rational xq(x);
  Rational value;
  Rational deriv;
  mpq_set_ui(value.get(), 1, 1);
  for (const auto& c : p.coeffs()) {
    mpq_mul(deriv.get(), deriv.get(), xq.get());
    mpq_add(deriv.get(), deriv.get(), value.get());
    mpq_mul(value.get(), value.get(), xq.get());
    mpq_add(value.get(), value.get(), Rational(c).get());
  }
  const auto cfg = x.precision();
  return {value.to_real(cfg), deriv.to_real(cfg)};
}

ValueAndDerivative eval_trig(const TrigCoeffPoly& p, const Real& x) {
  Real value = p.a0() / 2;
  Real deriv(x.precision());
  for (int k = 1; k <= p.degree(); ++k) {
    const Real kx = x * k;
    const Real c = cos(kx);
    const Real s = sin(kx);
    const auto& ak = p.a()[static_cast<std::size_t>(k - 1)];
    const auto& bk = p.b()[static_cast<std::size_t>(k - 1)];
    value += ak * c + bk * s;
    deriv += (bk * c - ak * s) * k;
  }
  return {value, deriv};
}

ValueAndDerivative eval_exp(const ExpCoeffPoly& p, const Real& x) {
  Real value = p.a0() / 2;
  Real deriv(x.precision());
  for (int k = 1; k <= p.degree(); ++k) {
    const Real kx = x * k;
    const Real c = cosh(kx);
    const Real s = sinh(kx);
    const auto& ak = p.a()[static_cast<std::size_t>(k - 1)];
    const auto& bk = p.b()[static_cast<std::size_t>(k - 1)];
    value += ak * c + bk * s;
    deriv += (ak * s + bk * c) * k;
  }
  return {value, deriv};
}

ValueAndDerivative eval_factored(const FactoredPoly& f, const Real& x) {
  const std::size_t m = f.roots().size();
  std::vector<Real> power;      // g_j^alpha_j
  std::vector<Real> power_der;  // d/dx g_j^alpha_j
  power.reserve(m);
  power_der.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Real t = x - f.roots()[j];
    Real g = t;
    Real dg(1, x.precision());
    switch (f.family()) {
      case Family::algebraic:
        break;
      case Family::trigonometric:
        g = sin(t / 2);
        dg = cos(t / 2) / 2;
        break;
      case Family::exponential:
        g = sinh(t / 2);
        dg = cosh(t / 2) / 2;
        break;
    }
    const long alpha = f.mults()[j];
    power.push_back(pow(g, alpha));
    power_der.push_back(pow(g, alpha - 1) * dg * alpha);
  }

  Real value(1, x.precision());
  for (const auto& v : power) value *= v;

  Real deriv(x.precision());
  for (std::size_t j = 0; j < m; ++j) {
    Real term = power_der[j];
    for (std::size_t l = 0; l < m; ++l) {
      if (l != j) term *= power[l];
    }
    deriv += term;
  }
  return {value, deriv};
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::algebraic: return "algebraic";
    case Family::trigonometric: return "trigonometric";
    case Family::exponential: return "exponential";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "algebraic") return Family::algebraic;
  if (text == "trigonometric") return Family::trigonometric;
  if (text == "exponential") return Family::exponential;
  return std::nullopt;
}

int root_count(Family family, int degree) {
  return family == Family::algebraic ? degree : 2 * degree;
}

AlgebraicCoeffPoly::AlgebraicCoeffPoly(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvariantError("algebraic polynomial must have degree >= 1");
  require_finite_coeffs(coeffs_, "algebraic");
}

TrigCoeffPoly::TrigCoeffPoly(Real a0, std::vector<Real> a, std::vector<Real> b)
    : a0_(std::move(a0)), a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw InvariantError("trigonometric polynomial must have degree >= 1");
  if (a_.size() != b_.size()) {
    throw InvariantError("trigonometric polynomial needs as many sine as cosine coefficients");
  }
  require_finite_coeffs(a_, "trigonometric");
  require_finite_coeffs(b_, "trigonometric");
  if (a_.back().is_zero() && b_.back().is_zero()) {
    throw InvariantError("trigonometric polynomial requires a_n^2 + b_n^2 > 0");
  }
}

ExpCoeffPoly::ExpCoeffPoly(Real a0, std::vector<Real> a, std::vector<Real> b)
    : a0_(std::move(a0)), a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw InvariantError("exponential polynomial must have degree >= 1");
  if (a_.size() != b_.size()) {
    throw InvariantError("exponential polynomial needs as many sinh as cosh coefficients");
  }
  require_finite_coeffs(a_, "exponential");
  require_finite_coeffs(b_, "exponential");
  if (a_.back().is_zero() && b_.back().is_zero()) {
    throw InvariantError("exponential polynomial requires a_n or b_n nonzero");
  }
}

FactoredPoly::FactoredPoly(Family family, std::vector<Real> roots, std::vector<int> mults)
    : family_(family), roots_(std::move(roots)), mults_(std::move(mults)) {
  if (roots_.empty()) throw InvariantError("factored polynomial needs at least one root");
  if (roots_.size() != mults_.size()) {
    throw InvariantError("factored polynomial has " + std::to_string(roots_.size()) +
                         " roots but " + std::to_string(mults_.size()) + " multiplicities");
  }
  for (std::size_t j = 0; j < mults_.size(); ++j) {
    if (mults_[j] < 1) {
      throw InvariantError("multiplicity of root " + std::to_string(j + 1) + " must be positive");
    }
    if (!roots_[j].is_finite()) throw InvariantError("roots must be finite");
    for (std::size_t l = 0; l < j; ++l) {
      if (roots_[l] == roots_[j]) throw DuplicateRootError("duplicate root " + roots_[j].str());
    }
  }
  if (family_ != Family::algebraic && multiplicity_sum() % 2 != 0) {
    throw InvariantError(std::string(to_string(family_)) +
                         " polynomial needs an even multiplicity sum (2n), got " +
                         std::to_string(multiplicity_sum()));
  }
}

int FactoredPoly::multiplicity_sum() const { return std::accumulate(mults_.begin(), mults_.end(), 0); }

int FactoredPoly::degree() const {
  return family_ == Family::algebraic ? multiplicity_sum() : multiplicity_sum() / 2;
}

Family family_of(const Polynomial& p) {
  struct Visitor {
    Family operator()(const AlgebraicCoeffPoly&) const { return Family::algebraic; }
    Family operator()(const TrigCoeffPoly&) const { return Family::trigonometric; }
    Family operator()(const ExpCoeffPoly&) const { return Family::exponential; }
    Family operator()(const FactoredPoly& f) const { return f.family(); }
  };
  return std::visit(Visitor{}, p);
}

int degree_of(const Polynomial& p) {
  return std::visit([](const auto& q) { return q.degree(); }, p);
}

ValueAndDerivative eval_with_derivative(const Polynomial& p, const Real& x) {
  struct Visitor {
    const Real& x;
    ValueAndDerivative operator()(const AlgebraicCoeffPoly& q) const { return eval_algebraic(q, x); }
    ValueAndDerivative operator()(const TrigCoeffPoly& q) const { return eval_trig(q, x); }
    ValueAndDerivative operator()(const ExpCoeffPoly& q) const { return eval_exp(q, x); }
    ValueAndDerivative operator()(const FactoredPoly& q) const { return eval_factored(q, x); }
  };
  return std::visit(Visitor{x}, p);
}

Real newton_ratio(const Polynomial& p, const Real& x) {
  auto [value, derivative] = eval_with_derivative(p, x);
  if (value.is_zero()) return Real(x.precision());
  if (derivative.is_zero()) throw DerivativeZeroError(x.str());
  return value / derivative;
}

AlgebraicCoeffPoly expand_algebraic(const FactoredPoly& f) {
  if (f.family() != Family::algebraic) {
    throw UnsupportedFamilyError("cannot expand a " + std::string(to_string(f.family())) +
                                 " polynomial into algebraic coefficients");
  }
  // Convolve exactly, then round each coefficient once.
  std::vector<Rational> c(1);
  mpq_set_ui(c[0].get(), 1, 1);
  Rational tmp;
  for (std::size_t j = 0; j < f.roots().size(); ++j) {
    const Rational r(f.roots()[j]);
    for (int rep = 0; rep < f.mults()[j]; ++rep) {
      c.emplace_back();
      for (std::size_t k = c.size() - 1; k >= 1; --k) {
        mpq_mul(tmp.get(), c[k - 1].get(), r.get());
        mpq_sub(c[k].get(), c[k].get(), tmp.get());
      }
    }
  }
  const auto cfg = f.roots().front().precision();
  std::vector<Real> coeffs;
  coeffs.reserve(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) coeffs.push_back(c[k].to_real(cfg));
  return AlgebraicCoeffPoly(std::move(coeffs));
}

}  // namespace simulroot
