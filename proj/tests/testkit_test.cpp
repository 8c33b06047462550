#include "cf/testkit.hpp"

#include <gtest/gtest.h>

#include "test_helpers.hpp"

using namespace cf;
using namespace cf::testkit;
using cf::test::iv;
using cf::test::pointwise;
using cf::test::segment;

TEST(GeneratorTest, SameSeedSameDraws) {
  GeneratorConfig cfg;
  for (Backend b : kAllBackends) {
    auto r1 = make_rng(5, 1, 42);
    auto r2 = make_rng(5, 1, 42);
    auto a1 = random_arrangement(b, r1, cfg);
    auto a2 = random_arrangement(b, r2, cfg);
    ASSERT_TRUE(a1->structurally_equal(*a2));
    EXPECT_EQ(random_expression(a1, r1, cfg), random_expression(a2, r2, cfg));
  }
  auto r3 = make_rng(5, 1, 43);
  auto r4 = make_rng(5, 1, 42);
  EXPECT_NE(r3(), r4());
}

TEST(GeneratorTest, DrawnSetsAreOpen) {
  GeneratorConfig cfg;
  cfg.max_grid_side = 8;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    auto rng = make_rng(1, 0, trial);
    auto arr = random_arrangement(kAllBackends[trial % 3], rng, cfg);
    OpenSet s = random_open_set(arr, rng);
    ASSERT_TRUE(is_open(CellSet(arr, s.bits())));
  }
}

TEST(GeneratorTest, ConnectedAndDisconnectedSetsOccur) {
  auto arr = segment({0, 1, 2, 3, 4, 5});
  bool connected = false, disconnected = false;
  for (std::uint64_t trial = 0; trial < 500 && !(connected && disconnected); ++trial) {
    auto rng = make_rng(2, 0, trial);
    OpenSet s = random_open_set(arr, rng);
    if (s.empty()) continue;
    (is_connected(s) ? connected : disconnected) = true;
  }
  EXPECT_TRUE(connected);
  EXPECT_TRUE(disconnected);
}

TEST(GeneratorTest, DegenerateConfigs) {
  auto arr = segment({0, 1, 2, 3, 4});
  GeneratorConfig cfg;
  cfg.mv_instances = 0;
  auto rng = make_rng(0, 0, 0);
  EXPECT_TRUE(random_zero_expression(arr, rng, cfg).empty());

  cfg.mv_instances = 1;
  cfg.coeff_bound = 1;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    auto r = make_rng(0, 1, trial);
    auto e = random_zero_expression(arr, r, cfg);
    EXPECT_TRUE(is_zero(alpha(e)));
    for (const Term& t : e.terms()) EXPECT_EQ(std::abs(t.coeff), 1);
  }

  cfg.coeff_bound = 0;
  auto f = random_function(arr, rng, cfg);
  EXPECT_TRUE(is_zero(f));
}

TEST(GeneratorTest, ZeroExpressionsHaveZeroImage) {
  GeneratorConfig cfg;
  cfg.max_grid_side = 6;
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    auto rng = make_rng(3, 0, trial);
    auto arr = random_arrangement(kAllBackends[trial % 3], rng, cfg);
    auto e = random_zero_expression(arr, rng, cfg);
    for (std::int64_t v : pointwise(e)) ASSERT_EQ(v, 0);
  }
}

TEST(GeneratorTest, LaminarExpressionsAreLaminar) {
  GeneratorConfig cfg;
  cfg.max_grid_side = 6;
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    auto rng = make_rng(4, 0, trial);
    auto arr = random_arrangement(kAllBackends[trial % 3], rng, cfg);
    ASSERT_TRUE(is_laminar(random_laminar_expression(arr, rng, cfg)));
  }
}

TEST(MinimizeTest, KeepsFailureAndShrinks) {
  auto arr = segment({0, 1, 2, 3, 4, 5});
  auto e = cf::test::expr(arr, {{1, iv(arr, 0, 5)}, {2, iv(arr, 1, 4)}, {-1, iv(arr, 2, 3)},
                                 {3, iv(arr, 3, 5)}});
  // "Fails" whenever the value on interval (2,3) is at least 2.
  auto fails = [&](const GroupExpression& x) { return alpha(x)(arr->interval_cell(2)) >= 2; };
  ASSERT_TRUE(fails(e));
  GroupExpression small = minimize_expression(e, fails);
  EXPECT_TRUE(fails(small));
  ASSERT_EQ(small.size(), 1u);
  EXPECT_EQ(small.terms()[0].set, iv(arr, 2, 3));
}

TEST(SuiteTest, SmallRunPasses) {
  SuiteConfig cfg;
  cfg.seed = 7;
  cfg.trials = 60;
  SuiteReport r = run_suite(cfg);
  EXPECT_TRUE(r.passed()) << report_to_text(r);
  EXPECT_EQ(r.ledger.weight_violations, 0u);
  EXPECT_GT(r.ledger.steps, 0u);
}

TEST(SuiteTest, BugHookIsCaughtQuickly) {
  SuiteConfig cfg;
  cfg.seed = 1;
  PropertyResult r = check_step_identity(cfg, 100, IntersectionCoefficient::kGreater);
  ASSERT_GT(r.failures, 0u);
  ASSERT_TRUE(r.first_failure);
  EXPECT_LT(*r.first_failure, 100u);
  ASSERT_TRUE(r.counterexample);
  const Json& cex = *r.counterexample;
  ASSERT_TRUE(cex.contains("pair"));
  EXPECT_EQ(cex.at("expression").at("terms").size(), 2u);

  // The shrunk instance reproduces the failure from JSON alone.
  auto arr = arrangement_from_json(cex.at("arrangement"));
  auto e = expression_from_json(arr, cex.at("expression"));
  auto pair = find_same_sign_overlap(e, Strategy::kFirstFound);
  ASSERT_TRUE(pair);
  StepResult wrong = mv_step(e, *pair, IntersectionCoefficient::kGreater);
  EXPECT_NE(pointwise(wrong.after), pointwise(e));
}

TEST(SuiteTest, TinyBudgetIsReportedNotFatal) {
  SuiteConfig cfg;
  cfg.seed = 3;
  cfg.trials = 30;
  cfg.max_steps = 1;
  SuiteReport r = run_suite(cfg);
  EXPECT_FALSE(r.passed());
  const std::string text = report_to_text(r);
  EXPECT_NE(text.find("StepBudgetExceeded"), std::string::npos) << text;
}

TEST(SuiteTest, ReportIsDeterministic) {
  SuiteConfig cfg;
  cfg.seed = 99;
  cfg.trials = 40;
  EXPECT_EQ(dump(report_to_json(run_suite(cfg))), dump(report_to_json(run_suite(cfg))));
  SuiteConfig other = cfg;
  other.seed = 100;
  EXPECT_NE(dump(report_to_json(run_suite(cfg))), dump(report_to_json(run_suite(other))));
}
