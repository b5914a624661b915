#include "simulroot/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>

#include "simulroot/errors.hpp"

namespace simulroot {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

// Returns npos when `text` is a well-formed numeral, else the offending position.
std::size_t scan_numeral(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  const auto digit = [&](std::size_t k) { return k < n && text[k] >= '0' && text[k] <= '9'; };

  if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t mantissa_digits = 0;
  while (digit(i)) ++i, ++mantissa_digits;
  if (i < n && text[i] == '.') {
    ++i;
    while (digit(i)) ++i, ++mantissa_digits;
  }
  if (mantissa_digits == 0) return i;
  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < n && (text[i] == '+' || text[i] == '-')) ++i;
    if (!digit(i)) return i;
    while (digit(i)) ++i;
  }
  return i == n ? std::string_view::npos : i;
}

struct MpfrStrDeleter {
  void operator()(char* s) const { mpfr_free_str(s); }
};
using MpfrStr = std::unique_ptr<char, MpfrStrDeleter>;

}  // namespace

void PrecisionConfig::validate() const {
  if (digits < kMinDigits || digits > kMaxDigits) {
    throw InvariantError("precision must be between " + std::to_string(kMinDigits) + " and " +
                         std::to_string(kMaxDigits) + " digits, got " + std::to_string(digits));
  }
  if (guard_digits < 0) {
    throw InvariantError("guard_digits must be non-negative, got " + std::to_string(guard_digits));
  }
}

mpfr_prec_t PrecisionConfig::bits() const {
  const double decimal = static_cast<double>(digits) + static_cast<double>(guard_digits);
  return static_cast<mpfr_prec_t>(std::ceil(decimal * 3.3219280948873623)) + 2;
}

Real::Real() : Real(PrecisionConfig{}) {}

Real::Real(const PrecisionConfig& cfg) : digits_(cfg.digits), guard_digits_(cfg.guard_digits) {
  mpfr_init2(v_, cfg.bits());
  mpfr_set_zero(v_, 1);
}

Real::Real(long value, const PrecisionConfig& cfg) : Real(cfg) { mpfr_set_si(v_, value, kRound); }

Real::Real(const Real& other) : digits_(other.digits_), guard_digits_(other.guard_digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, kRound);
}

Real::Real(Real&& other) noexcept : digits_(other.digits_), guard_digits_(other.guard_digits_) {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    digits_ = other.digits_;
    guard_digits_ = other.guard_digits_;
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, kRound);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) {
    std::swap(digits_, other.digits_);
    std::swap(guard_digits_, other.guard_digits_);
    mpfr_swap(v_, other.v_);
  }
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::parse(std::string_view text, const PrecisionConfig& cfg) {
  if (text.empty()) throw ParseError("empty numeral", 0);
  if (const auto bad = scan_numeral(text); bad != std::string_view::npos) {
    throw ParseError("malformed numeral '" + std::string(text) + "'", bad);
  }
  Real r(cfg);
  const std::string owned(text);
  mpfr_set_str(r.v_, owned.c_str(), 10, kRound);
  return r;
}

Real Real::pi(const PrecisionConfig& cfg) {
  Real r(cfg);
  mpfr_const_pi(r.v_, kRound);
  return r;
}

Real Real::pow10(long exponent, const PrecisionConfig& cfg) {
  Real r(cfg);
  mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(std::labs(exponent)), kRound);
  if (exponent < 0) mpfr_ui_div(r.v_, 1, r.v_, kRound);
  return r;
}

Real Real::with_precision(const PrecisionConfig& cfg) const {
  Real r(cfg);
  mpfr_set(r.v_, v_, kRound);
  return r;
}

std::string Real::str() const { return str(digits_); }

std::string Real::str(int significant_digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";

  mpfr_exp_t exp10 = 0;
  MpfrStr raw(mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(significant_digits), v_,
                           kRound));
  std::string mant(raw.get());
  std::string sign_prefix;
  if (!mant.empty() && mant.front() == '-') {
    sign_prefix = "-";
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();

  // value = 0.mant * 10^exp10
  const long sci = static_cast<long>(exp10) - 1;
  std::string out;
  if (sci >= -20 && sci < 40) {
    const long point = static_cast<long>(exp10);
    const long len = static_cast<long>(mant.size());
    if (point <= 0) {
      out = "0." + std::string(static_cast<std::size_t>(-point), '0') + mant;
    } else if (point >= len) {
      out = mant + std::string(static_cast<std::size_t>(point - len), '0');
    } else {
      out = mant.substr(0, static_cast<std::size_t>(point)) + "." +
            mant.substr(static_cast<std::size_t>(point));
    }
  } else {
    out = mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += (sci < 0 ? "e-" : "e+") + std::to_string(std::labs(sci));
  }
  return sign_prefix + out;
}

std::string Real::fixed(int decimals) const {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, "%.*RNf", decimals, v_) < 0) return str();
  MpfrStr owned(buf);
  std::string out(buf);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

PrecisionConfig Real::joined(const Real& a, const Real& b) {
  return {std::max(a.digits_, b.digits_), std::max(a.guard_digits_, b.guard_digits_)};
}

Real Real::operator-() const {
  Real r(precision());
  mpfr_neg(r.v_, v_, kRound);
  return r;
}

Real& Real::operator+=(const Real& rhs) { return *this = *this + rhs; }
Real& Real::operator-=(const Real& rhs) { return *this = *this - rhs; }
Real& Real::operator*=(const Real& rhs) { return *this = *this * rhs; }
Real& Real::operator/=(const Real& rhs) { return *this = *this / rhs; }

Real operator+(const Real& a, const Real& b) {
  Real r(Real::joined(a, b));
  mpfr_add(r.v_, a.v_, b.v_, kRound);
  return r;
}

Real operator-(const Real& a, const Real& b) {
  Real r(Real::joined(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, kRound);
  return r;
}

Real operator*(const Real& a, const Real& b) {
  Real r(Real::joined(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, kRound);
  return r;
}

Real operator/(const Real& a, const Real& b) {
  Real r(Real::joined(a, b));
  mpfr_div(r.v_, a.v_, b.v_, kRound);
  return r;
}

Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.v_, a.v_, b, kRound);
  return r;
}

Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.v_, a.v_, b, kRound);
  return r;
}

Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.v_, a.v_, b, kRound);
  return r;
}

Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.v_, a.v_, b, kRound);
  return r;
}

Real operator-(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_sub(r.v_, a, b.v_, kRound);
  return r;
}

Real operator/(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_div(r.v_, a, b.v_, kRound);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

std::partial_ordering operator<=>(const Real& a, long b) {
  if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const Real& a, long b) { return !mpfr_nan_p(a.v_) && mpfr_cmp_si(a.v_, b) == 0; }

namespace {

template <typename Fn>
Real unary(const Real& x, Fn fn) {
  Real r(x.precision());
  fn(r.data(), x.data(), kRound);
  return r;
}

}  // namespace

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }

Real floor(const Real& x) {
  Real r(x.precision());
  mpfr_floor(r.data(), x.data());
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(PrecisionConfig{std::max(base.digits(), exponent.digits()),
                         std::max(base.precision().guard_digits,
                                  exponent.precision().guard_digits)});
  mpfr_pow(r.data(), base.data(), exponent.data(), kRound);
  return r;
}

Real pow(const Real& base, long exponent) {
  Real r(base.precision());
  mpfr_pow_si(r.data(), base.data(), exponent, kRound);
  return r;
}

Real min(const Real& a, const Real& b) { return b < a ? b : a; }
Real max(const Real& a, const Real& b) { return a < b ? b : a; }

Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real tan(const Real& x) { return unary(x, mpfr_tan); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }
Real tanh(const Real& x) { return unary(x, mpfr_tanh); }

Real cot(const Real& x) {
  const Real s = sin(x);
  if (s.is_zero()) throw PoleError("cot", x.str());
  return cos(x) / s;
}

Real coth(const Real& x) {
  const Real s = sinh(x);
  if (s.is_zero()) throw PoleError("coth", x.str());
  return cosh(x) / s;
}

std::string_view to_string(Transcendental fn) {
  switch (fn) {
    case Transcendental::sin: return "sin";
    case Transcendental::cos: return "cos";
    case Transcendental::cot: return "cot";
    case Transcendental::sinh: return "sinh";
    case Transcendental::cosh: return "cosh";
    case Transcendental::coth: return "coth";
  }
  return "?";
}

Real transcendental(Transcendental fn, const Real& x) {
  switch (fn) {
    case Transcendental::sin: return sin(x);
    case Transcendental::cos: return cos(x);
    case Transcendental::cot: return cot(x);
    case Transcendental::sinh: return sinh(x);
    case Transcendental::cosh: return cosh(x);
    case Transcendental::coth: return coth(x);
  }
  return x;
}

Real make_real(std::string_view text, const PrecisionConfig& cfg) {
  cfg.validate();
  return Real::parse(text, cfg);
}

}  // namespace simulroot
