#include "cf/functions.hpp"

#include <gtest/gtest.h>

#include "cf/testkit.hpp"
#include "test_helpers.hpp"

using namespace cf;
using cf::test::expr;
using cf::test::iv;
using cf::test::pointwise;
using cf::test::segment;

TEST(IndicatorTest, Basics) {
  auto arr = segment({0, 1, 2, 3});
  EXPECT_TRUE(is_zero(indicator(CellSet(arr))));
  EXPECT_EQ(indicator(CellSet::full(arr)).values(), std::vector<std::int64_t>(arr->size(), 1));
  // Cells: p0 (0,1) p1 (1,2) p2 (2,3) p3
  EXPECT_EQ(indicator(iv(arr, 0, 2)).values(), (std::vector<std::int64_t>{0, 1, 1, 1, 0, 0, 0}));
  for (CellId c = 0; c < arr->size(); ++c) {
    EXPECT_EQ(evaluate(indicator(iv(arr, 0, 2)), c), iv(arr, 0, 2).contains(c) ? 1 : 0);
  }
}

TEST(AlphaTest, MayerVietorisRelationVanishes) {
  auto arr = segment({0, 1, 2, 3});
  OpenSet u = iv(arr, 0, 2), v = iv(arr, 1, 3);
  auto e = expr(arr, {{1, u}, {1, v}, {-1, unite(u, v)}, {-1, intersect(u, v)}});
  EXPECT_TRUE(is_zero(alpha(e)));
  EXPECT_TRUE(is_zero(alpha(GroupExpression(arr))));
}

TEST(AlphaTest, WeightedSum) {
  auto arr = segment({0, 1, 2, 3});
  auto e = expr(arr, {{2, iv(arr, 0, 2)}, {1, iv(arr, 1, 3)}});
  const std::vector<std::int64_t> frozen{0, 2, 2, 3, 1, 1, 0};
  EXPECT_EQ(pointwise(e), frozen);
  EXPECT_EQ(alpha(e).values(), frozen);
}

TEST(FunctionGroupTest, AddNegateEquals) {
  auto arr = segment({0, 1, 2, 3});
  auto f = alpha(expr(arr, {{2, iv(arr, 0, 2)}, {-3, iv(arr, 1, 3)}}));
  auto g = indicator(iv(arr, 2, 3));
  EXPECT_TRUE(is_zero(add(f, negate(f))));
  EXPECT_EQ(equals(f, g), is_zero(add(f, negate(g))));
  EXPECT_TRUE(equals(f, f));
  EXPECT_EQ(first_nonzero_cell(g), arr->interval_cell(2));
  EXPECT_THROW(add(f, ConstructibleFunction(segment({0, 5}))), ArrangementMismatch);
  EXPECT_THROW(ConstructibleFunction(arr, {1, 2}), std::invalid_argument);
}

TEST(DecomposeLocallyClosedTest, ClosedUnitIntervalInsideOpenNeighbourhood) {
  auto arr = segment({-1, 0, 1, 2});
  OpenSet u = iv(arr, -1, 2);
  CellSet c = closure(iv(arr, 0, 1).cells());
  GroupExpression e = decompose_locally_closed(u, c);
  // Cells: p-1 (-1,0) p0 (0,1) p1 (1,2) p2; [0,1] is {p0, (0,1), p1}.
  const std::vector<std::int64_t> closed_unit{0, 0, 1, 1, 1, 0, 0};
  EXPECT_EQ(pointwise(e), closed_unit);
  EXPECT_EQ(alpha(e), indicator(CellSet(arr, std::vector<CellId>{2, 3, 4})));
  ASSERT_EQ(e.size(), 2u);
  for (const Term& t : e.terms()) EXPECT_TRUE(is_open(t.set.cells()));
}

TEST(DecomposeLocallyClosedTest, DegenerateCases) {
  auto arr = segment({0, 1, 2, 3});
  OpenSet u = iv(arr, 0, 2);
  GroupExpression whole = decompose_locally_closed(u, CellSet::full(arr));
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole.terms()[0], (Term{1, u}));

  // u ∩ c empty: u - u merges away.
  const CellId far_point[] = {arr->point_cell(3)};
  GroupExpression none = decompose_locally_closed(u, CellSet(arr, far_point));
  EXPECT_TRUE(none.empty());
  EXPECT_TRUE(is_zero(alpha(none)));

  EXPECT_THROW(decompose_locally_closed(u, iv(arr, 0, 1).cells()), std::invalid_argument);
}

TEST(DecomposeTest, Examples) {
  auto arr = segment({0, 1, 2});
  EXPECT_TRUE(decompose(ConstructibleFunction(arr)).empty());

  // A point: (0,2) - (0,1) - (1,2).
  GroupExpression point = decompose(indicator(CellSet::single(arr, arr->point_cell(1))));
  EXPECT_EQ(point, expr(arr, {{1, iv(arr, 0, 2)}, {-1, iv(arr, 0, 1)}, {-1, iv(arr, 1, 2)}}));
  EXPECT_EQ(pointwise(point), (std::vector<std::int64_t>{0, 0, 1, 0, 0}));

  OpenSet u = iv(arr, 0, 2);
  EXPECT_EQ(alpha(decompose(indicator(u))), indicator(u));
}

TEST(DecomposePropertyTest, RoundTripAndOpenTerms) {
  testkit::GeneratorConfig cfg;
  cfg.coeff_bound = 10;
  for (std::uint64_t trial = 0; trial < 150; ++trial) {
    auto rng = testkit::make_rng(5, 0, trial);
    auto arr = testkit::random_arrangement(testkit::kAllBackends[trial % 3], rng, cfg);
    auto f = testkit::random_function(arr, rng, cfg);
    GroupExpression e = decompose(f);
    ASSERT_EQ(pointwise(e), f.values());
    ASSERT_TRUE(is_canonical(e));
    for (const Term& t : e.terms()) ASSERT_TRUE(is_open(t.set.cells()));
  }
}

TEST(AlphaPropertyTest, Homomorphism) {
  testkit::GeneratorConfig cfg;
  for (std::uint64_t trial = 0; trial < 300; ++trial) {
    auto rng = testkit::make_rng(6, 0, trial);
    auto arr = testkit::random_arrangement(testkit::kAllBackends[trial % 3], rng, cfg);
    auto a = testkit::random_expression(arr, rng, cfg);
    auto b = testkit::random_expression(arr, rng, cfg);
    ASSERT_EQ(alpha(add(a, b)), add(alpha(a), alpha(b)));
    ASSERT_EQ(alpha(a).values(), pointwise(a));
    OpenSet u = testkit::random_open_set(arr, rng);
    OpenSet v = testkit::random_open_set(arr, rng);
    ASSERT_TRUE(is_zero(alpha(expr(arr, {{1, u}, {1, v}, {-1, unite(u, v)}, {-1, intersect(u, v)}}))));
  }
}
