#include <gtest/gtest.h>

#include "oracles.hpp"
#include "simulroot/errors.hpp"
#include "simulroot/real.hpp"

using namespace simulroot;

namespace {

PrecisionConfig digits(int d) {
  PrecisionConfig cfg;
  cfg.digits = d;
  return cfg;
}

}  // namespace

TEST(PrecisionConfig, BitsCoverDigitsPlusGuard) {
  PrecisionConfig cfg;
  EXPECT_EQ(cfg.digits, 64);
  EXPECT_GE(cfg.bits(), static_cast<mpfr_prec_t>((64 + 10) * 3.3219280948873623));
}

TEST(PrecisionConfig, RejectsOutOfRangeDigits) {
  EXPECT_THROW(digits(29).validate(), InvariantError);
  EXPECT_THROW(digits(100001).validate(), InvariantError);
  EXPECT_NO_THROW(digits(30).validate());
  PrecisionConfig bad;
  bad.guard_digits = -1;
  EXPECT_THROW(bad.validate(), InvariantError);
}

TEST(MakeReal, ZeroAndSmallIntegers) {
  EXPECT_TRUE(make_real("0", {}).is_zero());
  EXPECT_EQ(make_real("-3", {}), -3);
  EXPECT_EQ(make_real("+17", {}), 17);
  EXPECT_EQ(make_real("-0", {}).str(), "0");
}

TEST(MakeReal, OneTenthWithinRelativeError) {
  const Real x = make_real("0.1", digits(64));
  const mpq_class rel = oracle::abs_q(oracle::to_q(x) - mpq_class(1, 10)) / mpq_class(1, 10);
  EXPECT_LT(rel, oracle::tenth_power(64));
}

TEST(MakeReal, ExponentNotation) {
  EXPECT_EQ(make_real("1.5e2", {}), 150);
  EXPECT_TRUE(oracle::close(make_real("-2.5E-3", {}), oracle::decimal("-0.0025"), oracle::tenth_power(70)));
  EXPECT_EQ(make_real(".5", {}) * 2, 1);
}

TEST(MakeReal, MalformedNumeralsReportPosition) {
  try {
    make_real("1.2x3", {});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(make_real("", {}), ParseError);
  EXPECT_THROW(make_real("-", {}), ParseError);
  EXPECT_THROW(make_real("1e", {}), ParseError);
  EXPECT_THROW(make_real("1..2", {}), ParseError);
  EXPECT_THROW(make_real("nan", {}), ParseError);
  EXPECT_THROW(make_real(" 1", {}), ParseError);
}

TEST(MakeReal, InvalidConfigRejected) { EXPECT_THROW(make_real("1", digits(5)), InvariantError); }

TEST(Transcendental, TrivialValues) {
  const Real zero(PrecisionConfig{});
  EXPECT_TRUE(transcendental(Transcendental::sin, zero).is_zero());
  EXPECT_EQ(transcendental(Transcendental::cosh, zero), 1);
  EXPECT_EQ(transcendental(Transcendental::cos, zero), 1);
  EXPECT_TRUE(transcendental(Transcendental::sinh, zero).is_zero());
}

TEST(Transcendental, SinhOneMatchesSeriesOracle) {
  const PrecisionConfig cfg = digits(80);
  const Real got = transcendental(Transcendental::sinh, Real(1, cfg));
  EXPECT_TRUE(oracle::close(got, oracle::sinh_series(1), oracle::tenth_power(79)));
  EXPECT_EQ(got.str(20), "1.1752011936438014569");
}

TEST(Transcendental, SinCosAgainstSeriesOracle) {
  const PrecisionConfig cfg = digits(64);
  for (const char* s : {"0.3", "-1.25", "2.5", "0.001"}) {
    const Real x = Real::parse(s, cfg);
    const mpq_class q = oracle::to_q(x);
    EXPECT_TRUE(oracle::close(sin(x), oracle::sin_series(q), oracle::tenth_power(64))) << s;
    EXPECT_TRUE(oracle::close(cos(x), oracle::cos_series(q), oracle::tenth_power(64))) << s;
  }
}

TEST(Transcendental, CotAndCothIdentities) {
  const PrecisionConfig cfg = digits(64);
  const Real x = Real::parse("0.7", cfg);
  const Real tol = Real::pow10(-62, cfg);
  EXPECT_LT(abs(cot(x) * tan(x) - 1), tol);
  EXPECT_LT(abs(coth(x) * tanh(x) - 1), tol);
  EXPECT_LT(abs(cosh(x) * cosh(x) - sinh(x) * sinh(x) - 1), tol);
  EXPECT_LT(abs(sin(x) * sin(x) + cos(x) * cos(x) - 1), tol);
}

TEST(Transcendental, PolesCarryArgument) {
  const Real zero(PrecisionConfig{});
  try {
    transcendental(Transcendental::cot, zero);
    FAIL() << "expected PoleError";
  } catch (const PoleError& e) {
    EXPECT_EQ(e.argument(), "0");
  }
  EXPECT_THROW(coth(zero), PoleError);
}

TEST(Transcendental, Names) {
  EXPECT_EQ(to_string(Transcendental::coth), "coth");
  EXPECT_EQ(to_string(Transcendental::sin), "sin");
}

TEST(Real, ArithmeticUsesWiderPrecision) {
  const Real a = Real::parse("1", digits(40));
  const Real b = Real::parse("3", digits(90));
  const Real c = a / b;
  EXPECT_EQ(c.digits(), 90);
  EXPECT_TRUE(oracle::close(c, mpq_class(1, 3), oracle::tenth_power(91)));
}

TEST(Real, MixedIntegerOperators) {
  const Real x = Real::parse("2.5", {});
  EXPECT_EQ(x + 1, Real::parse("3.5", {}));
  EXPECT_EQ(1 - x, Real::parse("-1.5", {}));
  EXPECT_EQ(x * 4, 10);
  EXPECT_EQ(5 / x, 2);
  EXPECT_LT(x, 3);
  EXPECT_GT(x, 2);
}

TEST(Real, CanonicalPrinting) {
  EXPECT_EQ(Real::parse("0.1", {}).str(), "0.1");
  EXPECT_EQ(Real::parse("-2.5000", {}).str(), "-2.5");
  EXPECT_EQ(Real::parse("1e-30", {}).str(), "1e-30");
  EXPECT_EQ(Real::parse("123456", {}).str(), "123456");
  EXPECT_EQ(Real::parse("0.000125", {}).str(), "0.000125");
  EXPECT_EQ((Real(1, {}) / 3).str(8), "0.33333333");
}

TEST(Real, PrintParseIsByteStable) {
  const PrecisionConfig cfg = digits(64);
  const Real x = Real::pi(cfg) / 7;
  const std::string once = x.str();
  EXPECT_EQ(Real::parse(once, cfg).str(), once);
  const Real tiny = Real::pow10(-50, cfg) * Real::pi(cfg);
  EXPECT_EQ(Real::parse(tiny.str(), cfg).str(), tiny.str());
}

TEST(Real, FixedFormat) {
  EXPECT_EQ(Real::parse("-3", {}).fixed(18), "-3.000000000000000000");
  EXPECT_EQ(Real::parse("0.1", {}).fixed(3), "0.100");
  EXPECT_EQ(Real::parse("-1e-40", {}).fixed(4), "0.0000");
}

TEST(Real, WithPrecisionRounds) {
  const Real third = Real(1, digits(100)) / 3;
  const Real narrow = third.with_precision(digits(30));
  EXPECT_EQ(narrow.digits(), 30);
  EXPECT_LT(abs(narrow - third), Real::pow10(-30, digits(100)));
}

TEST(Real, PowAndLog) {
  const Real two(2, {});
  EXPECT_EQ(pow(two, 10L), 1024);
  EXPECT_LT(abs(log(exp(two)) - 2), Real::pow10(-60, {}));
  EXPECT_LT(abs(pow(two, Real::parse("0.5", {})) - sqrt(two)), Real::pow10(-60, {}));
  EXPECT_EQ(floor(Real::parse("-1.5", {})), -2);
  EXPECT_EQ(Real::pow10(3, {}), 1000);
}
