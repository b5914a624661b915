#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "generators.hpp"
#include "oracles.hpp"
#include "simulroot/errors.hpp"
#include "simulroot/fixtures.hpp"
#include "simulroot/ingest.hpp"
#include "simulroot/solver.hpp"

using namespace simulroot;

namespace {

const PrecisionConfig kCfg{};

Real R(const char* s) { return Real::parse(s, kCfg); }

EstimateVector est(std::initializer_list<const char*> xs) {
  EstimateVector v;
  for (const char* x : xs) v.x.push_back(R(x));
  return v;
}

std::vector<mpq_class> exact(const EstimateVector& v) {
  std::vector<mpq_class> out;
  for (const auto& x : v.x) out.push_back(oracle::to_q(x));
  return out;
}

const FactoredPoly& ex(int table) {
  static const std::vector<FactoredPoly> polys{worked_example(1).polynomial(kCfg), worked_example(2).polynomial(kCfg),
                                               worked_example(3).polynomial(kCfg)};
  return polys[static_cast<std::size_t>(table - 1)];
}

}  // namespace

TEST(Profile, SumMustMatchRootCount) {
  EXPECT_THROW(MultiplicityProfile(Family::algebraic, {2, 1, 2}, 6), InvariantError);
  EXPECT_THROW(MultiplicityProfile(Family::trigonometric, {3, 2, 1}, 6), InvariantError);
  EXPECT_NO_THROW(MultiplicityProfile(Family::trigonometric, {3, 2, 1}, 3));
  EXPECT_THROW(MultiplicityProfile(Family::algebraic, {0, 6}, 6), InvariantError);
  EXPECT_EQ(MultiplicityProfile::of(ex(3)).mults(), (std::vector<int>{2, 2}));
}

TEST(CorrectionSum, SingleRootIsEmpty) {
  const MultiplicityProfile prof(Family::algebraic, {4}, 4);
  EXPECT_TRUE(correction_sum(Family::algebraic, est({"0.5"}), prof, 0).is_zero());
}

TEST(CorrectionSum, AlgebraicExample) {
  const MultiplicityProfile prof(Family::algebraic, {2, 1, 3}, 6);
  // 2/(0.1 + 3) + 3/(0.1 - 4) evaluated at index 1 (second estimate)
  const Real got = correction_sum(Family::algebraic, est({"-3", "0.1", "4"}), prof, 1);
  const mpq_class expect = mpq_class(2) / oracle::decimal("3.1") + mpq_class(3) / oracle::decimal("-3.9");
  EXPECT_TRUE(oracle::close(got, expect, oracle::tenth_power(66)));
}

TEST(CorrectionSum, AlgebraicFirstIndex) {
  const MultiplicityProfile prof(Family::algebraic, {2, 1, 3}, 6);
  // 1/(-3.1) + 3/(-7)
  const Real got = correction_sum(Family::algebraic, est({"-3", "0.1", "4"}), prof, 0);
  EXPECT_EQ(got.str(12), "-0.751152073733");
  EXPECT_TRUE(oracle::close(got, mpq_class(-10, 31) - mpq_class(3, 7), oracle::tenth_power(66)));
}

TEST(CorrectionSum, TrigonometricExample) {
  const MultiplicityProfile prof(Family::trigonometric, {3, 2, 1}, 3);
  // (1/2)[3 cot(0.75) + 1 cot(-0.65)] at index 1, i.e. estimates 1.7 against 0.2 and 3
  const Real got = correction_sum(Family::trigonometric, est({"0.2", "1.7", "3"}), prof, 1);
  const Real expect = (cot(R("0.75")) * 3 + cot(R("-0.65"))) / 2;
  EXPECT_LT(abs(got - expect), R("1e-62"));
}

TEST(CorrectionSum, TrigonometricFirstIndexFrozen) {
  const MultiplicityProfile prof(Family::trigonometric, {3, 2, 1}, 3);
  // (1/2)[2 cot(-0.75) + cot(-1.4)], mpmath at 80 digits
  const Real got = correction_sum(Family::trigonometric, est({"0.2", "1.7", "3"}), prof, 0);
  EXPECT_LT(abs(got - R("-1.1596645114652773351292214653130979375635469431171292207365013290")), R("1e-62"));
}

TEST(CorrectionSum, ExponentialUsesCoth) {
  const MultiplicityProfile prof(Family::exponential, {2, 2}, 2);
  const Real got = correction_sum(Family::exponential, est({"-1.5", "3.4"}), prof, 0);
  EXPECT_LT(abs(got - coth(R("-2.45"))), R("1e-62"));
}

TEST(CorrectionSum, CollisionNamesPair) {
  const MultiplicityProfile prof(Family::algebraic, {1, 1, 1}, 3);
  try {
    correction_sum(Family::algebraic, est({"1", "2", "1"}), prof, 0);
    FAIL() << "expected CollisionError";
  } catch (const CollisionError& e) {
    EXPECT_EQ(e.first(), 0u);
    EXPECT_EQ(e.second(), 2u);
  }
}

TEST(Step, AlgebraicMatchesExactOracle) {
  const auto x0 = est({"-3", "0.1", "4"});
  const auto got = step(Polynomial(ex(1)), x0, MultiplicityProfile::of(ex(1)));
  const auto expect = oracle::chebyshev_step({-2, 1, 3}, {2, 1, 3}, exact(x0));
  EXPECT_EQ(got.k, 1);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(oracle::close(got.x[i], expect[i], oracle::tenth_power(66))) << i;
}

TEST(Step, FirstRowsOfReferenceTables) {
  for (int table = 1; table <= 3; ++table) {
    const WorkedExample& pe = worked_example(table);
    const auto got = step(Polynomial(ex(table)), pe.initial_estimates(kCfg), MultiplicityProfile::of(ex(table)));
    for (std::size_t i = 0; i < got.x.size(); ++i) {
      EXPECT_LT(abs(got.x[i] - R(pe.golden[1][i].c_str())), R("1e-17")) << "table " << table << " x" << i + 1;
    }
  }
}

TEST(Step, FirstRowsFrozen) {
  const auto got = step(Polynomial(ex(1)), worked_example(1).initial_estimates(kCfg), MultiplicityProfile::of(ex(1)));
  EXPECT_EQ(got.x[0].fixed(18), "-2.074075484632669383");
  EXPECT_EQ(got.x[1].fixed(18), "1.025215703994304145");
  EXPECT_EQ(got.x[2].fixed(18), "3.060848242666424485");
}

TEST(Step, CoefficientFormGivesSameStep) {
  const auto x0 = est({"-3", "0.1", "4"});
  const auto prof = MultiplicityProfile::of(ex(1));
  const auto a = step(Polynomial(ex(1)), x0, prof);
  const auto b = step(Polynomial(expand_algebraic(ex(1))), x0, prof);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(abs(a.x[i] - b.x[i]), R("1e-66"));
}

TEST(Step, SingleAlgebraicRootIsExact) {
  gen::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.integer(1, 7);
    const Real r = gen::real(rng.uniform(-5, 5), kCfg);
    const FactoredPoly p(Family::algebraic, {r}, {n});
    EstimateVector x0{{r + gen::real(rng.uniform(0.1, 3.0), kCfg)}, 0};
    const auto got = step(Polynomial(p), x0, MultiplicityProfile::of(p));
    EXPECT_LT(abs(got.x[0] - r), R("1e-70"));
  }
}

TEST(Step, FixedPointAtTrueRoots) {
  for (int table = 1; table <= 3; ++table) {
    EstimateVector roots{worked_example(table).roots(kCfg), 0};
    const auto got = step(Polynomial(ex(table)), roots, MultiplicityProfile::of(ex(table)));
    for (std::size_t i = 0; i < roots.x.size(); ++i) EXPECT_EQ(got.x[i], roots.x[i]);
  }
}

TEST(Step, PermutationEquivariant) {
  const FactoredPoly p(Family::algebraic, {R("1"), R("3"), R("-2")}, {1, 3, 2});
  const auto a = step(Polynomial(ex(1)), est({"-3", "0.1", "4"}), MultiplicityProfile::of(ex(1)));
  const auto b = step(Polynomial(p), est({"0.1", "4", "-3"}), MultiplicityProfile::of(p));
  EXPECT_LT(abs(a.x[0] - b.x[2]), R("1e-66"));
  EXPECT_LT(abs(a.x[1] - b.x[0]), R("1e-66"));
  EXPECT_LT(abs(a.x[2] - b.x[1]), R("1e-66"));
}

TEST(Step, CollisionRejected) {
  EXPECT_THROW(step(Polynomial(ex(1)), est({"1", "1", "4"}), MultiplicityProfile::of(ex(1))), CollisionError);
}

TEST(Step, DerivativeZeroCarriesIndex) {
  const FactoredPoly p(Family::algebraic, {R("1"), R("3")}, {1, 1});
  try {
    step(Polynomial(p), est({"2", "5"}), MultiplicityProfile::of(p));
    FAIL() << "expected DerivativeZeroError";
  } catch (const DerivativeZeroError& e) {
    EXPECT_EQ(e.root_index(), 0u);
  }
}

TEST(NewtonBaseline, Example1MatchesOracle) {
  const auto x0 = est({"-3", "0.1", "4"});
  const auto got = newton_baseline_step(Polynomial(ex(1)), x0, MultiplicityProfile::of(ex(1)));
  const auto expect = oracle::newton_step({-2, 1, 3}, {2, 1, 3}, exact(x0));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(oracle::close(got.x[i], expect[i], oracle::tenth_power(66)));
  EXPECT_TRUE(oracle::close(got.x[0], mpq_class(-25, 11), oracle::tenth_power(66)));
}

TEST(NewtonBaseline, SingleRootAndFixedPoint) {
  const FactoredPoly p(Family::algebraic, {R("0.75")}, {3});
  const auto got = newton_baseline_step(Polynomial(p), est({"2"}), MultiplicityProfile::of(p));
  EXPECT_EQ(got.x[0], R("0.75"));
  EstimateVector roots{worked_example(1).roots(kCfg), 0};
  const auto same = newton_baseline_step(Polynomial(ex(1)), roots, MultiplicityProfile::of(ex(1)));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(same.x[i], roots.x[i]);
}

TEST(Solve, ExamplesReachRootsWithin18Digits) {
  for (int table = 1; table <= 3; ++table) {
    const WorkedExample& pe = worked_example(table);
    SolveConfig cfg;
    cfg.max_iters = pe.iterations;
    const auto truth = pe.roots(kCfg);
    const auto report = solve(Polynomial(ex(table)), MultiplicityProfile::of(ex(table)),
                              pe.initial_estimates(kCfg), cfg, truth);
    ASSERT_EQ(report.trace.snapshots.size(), static_cast<std::size_t>(pe.iterations + 1));
    for (std::size_t i = 0; i < truth.size(); ++i) {
      EXPECT_LT(abs(report.final_estimates().x[i] - truth[i]), R("1e-18")) << "table " << table;
    }
    ASSERT_TRUE(report.trace.errors.has_value());
    EXPECT_EQ(report.trace.errors->size(), report.trace.snapshots.size());
  }
}

TEST(Solve, ConvergesAndStopsOnTolerance) {
  SolveConfig cfg;
  const auto report = solve(Polynomial(ex(1)), MultiplicityProfile::of(ex(1)), est({"-3", "0.1", "4"}), cfg);
  EXPECT_TRUE(report.converged);
  EXPECT_EQ(report.stop_reason, StopReason::tolerance);
  EXPECT_LT(report.trace.snapshots.size(), 10u);
  EXPECT_EQ(report.trace.steps.size() + 1, report.trace.snapshots.size());
  EXPECT_FALSE(report.failure.has_value());
}

TEST(Solve, MaxItersWhenBudgetTooSmall) {
  SolveConfig cfg;
  cfg.max_iters = 2;
  const auto report = solve(Polynomial(ex(2)), MultiplicityProfile::of(ex(2)), est({"0.2", "1.7", "3"}), cfg);
  EXPECT_FALSE(report.converged);
  EXPECT_EQ(report.stop_reason, StopReason::max_iters);
  EXPECT_EQ(report.trace.snapshots.size(), 3u);
}

TEST(Solve, StepFailureIsReported) {
  const FactoredPoly p(Family::algebraic, {R("1"), R("3")}, {1, 1});
  const auto report = solve(Polynomial(p), MultiplicityProfile::of(p), est({"2", "5"}), SolveConfig{});
  EXPECT_FALSE(report.converged);
  EXPECT_EQ(report.stop_reason, StopReason::step_failure);
  ASSERT_TRUE(report.failure.has_value());
  EXPECT_EQ(report.failure->kind, "derivative_zero");
  EXPECT_EQ(report.failure->root_index, 0u);
}

TEST(Solve, DuplicateInitialEstimatesRejected) {
  EXPECT_THROW(solve(Polynomial(ex(1)), MultiplicityProfile::of(ex(1)), est({"1", "1", "4"}), SolveConfig{}),
               CollisionError);
}

TEST(Solve, InvalidConfig) {
  SolveConfig cfg;
  cfg.max_iters = 0;
  EXPECT_THROW(cfg.validate(), InvariantError);
  SolveConfig tol;
  tol.step_tolerance = R("-1");
  EXPECT_THROW(tol.validate(), InvariantError);
}

TEST(Solve, DefaultToleranceTracksDigits) {
  SolveConfig cfg;
  cfg.precision.digits = 40;
  EXPECT_EQ(cfg.tolerance(), Real::pow10(-34, cfg.precision));
  EXPECT_EQ(precision_floor(cfg.precision), Real::pow10(-34, cfg.precision));
}

TEST(Solve, NewtonBaselineMethod) {
  SolveConfig cfg;
  cfg.method = Method::newton_baseline;
  const auto report = solve(Polynomial(ex(3)), MultiplicityProfile::of(ex(3)), est({"-1.5", "3.4"}), cfg);
  EXPECT_TRUE(report.converged);
  EXPECT_EQ(report.method, Method::newton_baseline);
  EXPECT_GT(report.trace.snapshots.size(), 6u);
}

TEST(Wrap, IntoPrincipalInterval) {
  const auto w = wrap_to_principal(std::vector<Real>{R("7"), R("-4"), R("1")});
  const Real two_pi = Real::pi(kCfg) * 2;
  EXPECT_LT(abs(w[0] - (R("7") - two_pi)), R("1e-62"));
  EXPECT_LT(abs(w[1] - (R("-4") + two_pi)), R("1e-62"));
  EXPECT_EQ(w[2], 1);
  const auto edge = wrap_to_principal(std::vector<Real>{Real::pi(kCfg)});
  EXPECT_EQ(edge[0], -Real::pi(kCfg));
}

TEST(Order, SyntheticCubicIsThree) {
  std::vector<Real> e;
  for (int k = 0; k < 4; ++k) e.push_back(error_bound(R("0.5"), R("0.5"), k));
  EXPECT_LT(abs(empirical_order(e) - 3), R("1e-60"));
}

TEST(Order, GeometricIsOne) {
  std::vector<Real> e;
  for (int k = 0; k < 6; ++k) e.push_back(pow(R("0.5"), static_cast<long>(k)));
  EXPECT_LT(abs(empirical_order(e) - 1), R("1e-60"));
}

TEST(Order, ReferenceTable1DigitsGiveFrozenValue) {
  // log-ratio on the printed x1 errors; value computed independently with mpmath
  const std::vector<Real> e{R("7.40754846e-2"), R("1.04622198e-4"), R("2.5695e-14")};
  EXPECT_LT(abs(empirical_order(e) - R("3.37179101683499574855154945003231206522865")), R("1e-40"));
}

TEST(Order, UsesLastTripleAboveFloor) {
  const std::vector<Real> e{R("1e-1"), R("1e-3"), R("1e-9"), R("1e-27"), R("1e-70"), R("0")};
  const auto est_all = estimate_order(e);
  EXPECT_EQ(est_all.indices[2], 4u);
  const auto est_floor = estimate_order(e, R("1e-58"));
  EXPECT_EQ(est_floor.indices, (std::array<std::size_t, 3>{1, 2, 3}));
  EXPECT_LT(abs(est_floor.order - 3), R("1e-60"));
}

TEST(Order, InsufficientData) {
  EXPECT_THROW(empirical_order(std::vector<Real>{R("1"), R("0.1")}), InsufficientDataError);
  EXPECT_THROW(empirical_order(std::vector<Real>{R("1"), R("2"), R("3")}), InsufficientDataError);
  EXPECT_THROW(empirical_order(std::vector<Real>{R("1e-70"), R("1e-80"), R("1e-90")}, R("1e-58")),
               InsufficientDataError);
}

TEST(Order, MaxNorm) {
  const auto m = max_norm_errors({{R("1"), R("3")}, {R("0.5"), R("0.25")}});
  EXPECT_EQ(m[0], 3);
  EXPECT_EQ(m[1], R("0.5"));
}

TEST(Names, MethodAndStopReason) {
  EXPECT_EQ(parse_method("newton_baseline"), Method::newton_baseline);
  EXPECT_FALSE(parse_method("halley").has_value());
  EXPECT_EQ(to_string(StopReason::step_failure), "step_failure");
  EXPECT_EQ(parse_stop_reason("tolerance"), StopReason::tolerance);
}
