#pragma once

// Formal integer combinations of open sets.

#include <cstdint>
#include <optional>
#include <vector>

#include "cf/geometry.hpp"

namespace cf {

struct Term {
  std::int64_t coeff;
  OpenSet set;

  friend bool operator==(const Term& a, const Term& b) {
    return a.coeff == b.coeff && a.set == b.set;
  }
};

/// Canonical term order: lowest cell, then size, then lexicographic cell list.
bool set_order_less(const OpenSet& a, const OpenSet& b);

struct SetOrder {
  bool operator()(const OpenSet& a, const OpenSet& b) const { return set_order_less(a, b); }
};

/// Terms are kept sorted by SetOrder with nonzero coefficients and distinct
/// nonempty sets. Instances only come out of make_expression and friends.
class GroupExpression {
 public:
  explicit GroupExpression(ArrangementPtr arr) : arr_(std::move(arr)) {}

  const ArrangementPtr& arrangement() const { return arr_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of `set`, or 0 when absent.
  std::int64_t coefficient_of(const OpenSet& set) const;

  friend bool operator==(const GroupExpression& a, const GroupExpression& b) {
    return a.terms_ == b.terms_;
  }

 private:
  friend GroupExpression make_expression(const ArrangementPtr&, const std::vector<Term>&);

  ArrangementPtr arr_;
  std::vector<Term> terms_;
};

/// Merges equal sets by adding coefficients, then drops zero coefficients and
/// empty sets. Throws ArrangementMismatch if a set lives elsewhere.
GroupExpression make_expression(const ArrangementPtr& arr, const std::vector<Term>& terms);

/// Splits every set into its connected components (each inheriting the
/// coefficient), then merges.
GroupExpression canonicalize(const GroupExpression& e);
bool is_canonical(const GroupExpression& e);

GroupExpression add(const GroupExpression& a, const GroupExpression& b);
GroupExpression subtract(const GroupExpression& a, const GroupExpression& b);
GroupExpression scale(const GroupExpression& e, std::int64_t factor);

struct ExprStats {
  Rational weight{0};         // sum of |coeff| * measure(set)
  std::int64_t max_coeff = 0;  // max |coeff|, 0 when empty
  std::size_t term_count = 0;
  std::size_t overlap_count = 0;  // unordered overlapping pairs

  friend bool operator==(const ExprStats&, const ExprStats&) = default;
};

ExprStats stats(const GroupExpression& e);

}  // namespace cf
