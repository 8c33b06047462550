#include "cf/expressions.hpp"

#include <gtest/gtest.h>

#include "cf/functions.hpp"
#include "cf/testkit.hpp"
#include "test_helpers.hpp"

using namespace cf;
using cf::test::expr;
using cf::test::iv;
using cf::test::pointwise;
using cf::test::segment;

TEST(MakeExpressionTest, MergesAndDrops) {
  auto arr = segment({0, 1, 2, 3});
  OpenSet u = iv(arr, 0, 2);
  EXPECT_TRUE(expr(arr, {{1, u}, {-1, u}}).empty());
  EXPECT_EQ(expr(arr, {{1, u}, {2, u}}).terms(), (std::vector<Term>{{3, u}}));
  EXPECT_TRUE(expr(arr, {{1, OpenSet(arr)}}).empty());
  EXPECT_TRUE(expr(arr, {{0, u}}).empty());
  EXPECT_THROW(expr(arr, {{1, iv(segment({0, 4}), 0, 4)}}), ArrangementMismatch);
}

TEST(MakeExpressionTest, TermOrder) {
  auto arr = segment({0, 1, 2, 3});
  // Lowest cell first, then size, then the cell lists.
  auto e = expr(arr, {{1, iv(arr, 1, 3)}, {1, iv(arr, 0, 3)}, {1, iv(arr, 0, 1)}, {1, iv(arr, 1, 2)}});
  std::vector<OpenSet> order;
  for (const Term& t : e.terms()) order.push_back(t.set);
  EXPECT_EQ(order, (std::vector<OpenSet>{iv(arr, 0, 1), iv(arr, 0, 3), iv(arr, 1, 2), iv(arr, 1, 3)}));
}

TEST(CanonicalizeTest, SplitsComponents) {
  auto arr = segment({0, 1, 2, 3});
  auto split = canonicalize(expr(arr, {{2, unite(iv(arr, 0, 1), iv(arr, 2, 3))}}));
  EXPECT_EQ(split.terms(), (std::vector<Term>{{2, iv(arr, 0, 1)}, {2, iv(arr, 2, 3)}}));
  EXPECT_TRUE(canonicalize(expr(arr, {{1, iv(arr, 0, 1)}, {-1, iv(arr, 0, 1)}})).empty());

  // Splitting can merge with an existing term.
  auto merged = canonicalize(expr(arr, {{2, unite(iv(arr, 0, 1), iv(arr, 2, 3))}, {-2, iv(arr, 2, 3)}}));
  EXPECT_EQ(merged.terms(), (std::vector<Term>{{2, iv(arr, 0, 1)}}));
  EXPECT_TRUE(is_canonical(merged));
  EXPECT_FALSE(is_canonical(expr(arr, {{1, unite(iv(arr, 0, 1), iv(arr, 2, 3))}})));
}

TEST(StatsTest, Examples) {
  auto arr = segment({0, 1, 2, 3});
  ExprStats empty = stats(GroupExpression(arr));
  EXPECT_EQ(empty.weight, Rational(0));
  EXPECT_EQ(empty.max_coeff, 0);
  EXPECT_EQ(empty.overlap_count, 0u);

  // 2 * |(0,2)| + 1 * |(1,3)| with three cells each.
  ExprStats s = stats(expr(arr, {{2, iv(arr, 0, 2)}, {1, iv(arr, 1, 3)}}));
  EXPECT_EQ(s.weight, Rational(9));
  EXPECT_EQ(s.max_coeff, 2);
  EXPECT_EQ(s.term_count, 2u);
  EXPECT_EQ(s.overlap_count, 1u);

  EXPECT_EQ(stats(expr(arr, {{1, iv(arr, 0, 1)}, {1, iv(arr, 2, 3)}})).overlap_count, 0u);
  EXPECT_EQ(stats(expr(arr, {{-4, iv(arr, 0, 1)}})).max_coeff, 4);
}

TEST(SubtractTest, Examples) {
  auto arr = segment({0, 1, 2, 3});
  auto e1 = expr(arr, {{2, iv(arr, 0, 2)}, {-1, iv(arr, 1, 3)}});
  auto e2 = expr(arr, {{1, iv(arr, 0, 3)}});
  EXPECT_TRUE(subtract(e1, e1).empty());
  EXPECT_EQ(subtract(e1, GroupExpression(arr)), e1);
  EXPECT_EQ(alpha(subtract(e1, e2)), add(alpha(e1), negate(alpha(e2))));
}

TEST(ExpressionPropertyTest, CanonicalizePreservesFunction) {
  testkit::GeneratorConfig cfg;
  for (std::uint64_t trial = 0; trial < 400; ++trial) {
    auto rng = testkit::make_rng(7, 0, trial);
    auto arr = testkit::random_arrangement(testkit::kAllBackends[trial % 3], rng, cfg);
    auto e = testkit::random_expression(arr, rng, cfg);
    auto c = canonicalize(e);
    ASSERT_EQ(pointwise(c), pointwise(e));
    ASSERT_TRUE(is_canonical(c));
    ASSERT_EQ(canonicalize(c), c);

    Rational w(0);
    for (const Term& t : c.terms()) w += Rational(std::abs(t.coeff)) * measure(t.set);
    ASSERT_EQ(stats(c).weight, w);
  }
}
