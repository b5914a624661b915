#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace simulroot {

inline constexpr int kMinDigits = 30;
inline constexpr int kMaxDigits = 100000;

/// Working precision, in decimal digits. `guard_digits` are carried internally on
/// top of `digits`; printing and tolerances are expressed in `digits`.
struct PrecisionConfig {
  int digits = 64;
  int guard_digits = 10;

  /// Throws InvariantError unless kMinDigits <= digits <= kMaxDigits and guard_digits >= 0.
  void validate() const;

  mpfr_prec_t bits() const;

  friend bool operator==(const PrecisionConfig&, const PrecisionConfig&) = default;
};

/// Arbitrary-precision real number backed by MPFR, rounding to nearest.
///
/// Every value carries its own precision; binary operations produce a result at the
/// larger of the two operand precisions. There is no process-wide precision state.
class Real {
 public:
  /// +0 at the default precision.
  Real();
  /// +0 at `cfg`.
  explicit Real(const PrecisionConfig& cfg);
  /// Exact small integer.
  explicit Real(long value, const PrecisionConfig& cfg = {});

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a signed decimal numeral (`-12.5e-3`), correctly rounded at `cfg`.
  /// Throws ParseError carrying the first offending character position.
  static Real parse(std::string_view text, const PrecisionConfig& cfg = {});
  static Real pi(const PrecisionConfig& cfg = {});
  /// 10^exponent, correctly rounded.
  static Real pow10(long exponent, const PrecisionConfig& cfg = {});

  PrecisionConfig precision() const { return {digits_, guard_digits_}; }
  int digits() const { return digits_; }

  /// The same value rounded to another precision.
  Real with_precision(const PrecisionConfig& cfg) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Canonical decimal form: `digits()` significant digits, trailing zeros removed,
  /// plain notation for moderate exponents, `d.ddde-NN` otherwise.
  /// Parsing the result at the same precision and printing again is byte-identical.
  std::string str() const;
  std::string str(int significant_digits) const;
  /// Fixed-point with exactly `decimals` digits after the point.
  std::string fixed(int decimals) const;

  mpfr_srcptr data() const { return v_; }
  mpfr_ptr data() { return v_; }

  Real operator-() const;
  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(long a, const Real& b);

  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, const Real& b);
  friend std::partial_ordering operator<=>(const Real& a, long b);
  friend bool operator==(const Real& a, long b);

 private:
  static PrecisionConfig joined(const Real& a, const Real& b);

  int digits_;
  int guard_digits_;
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real floor(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
/// cos/sin; throws PoleError where sin(x) vanishes at working precision.
Real cot(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
/// cosh/sinh; throws PoleError at x = 0.
Real coth(const Real& x);

enum class Transcendental { sin, cos, cot, sinh, cosh, coth };

std::string_view to_string(Transcendental fn);
Real transcendental(Transcendental fn, const Real& x);

/// Same as Real::parse, validating `cfg` first.
Real make_real(std::string_view text, const PrecisionConfig& cfg);

}  // namespace simulroot
