#pragma once

// Integer-valued functions constant on cells, the indicator homomorphism
// from expressions to functions, and its constructive right inverse.

#include <cstdint>
#include <optional>
#include <vector>

#include "cf/expressions.hpp"
#include "cf/geometry.hpp"

namespace cf {

class ConstructibleFunction {
 public:
  /// Zero function.
  explicit ConstructibleFunction(ArrangementPtr arr);
  ConstructibleFunction(ArrangementPtr arr, std::vector<std::int64_t> values);

  const ArrangementPtr& arrangement() const { return arr_; }
  const std::vector<std::int64_t>& values() const { return values_; }
  std::int64_t operator()(CellId c) const { return values_.at(c); }

  friend bool operator==(const ConstructibleFunction& a, const ConstructibleFunction& b) {
    return a.values_ == b.values_;
  }

 private:
  ArrangementPtr arr_;
  std::vector<std::int64_t> values_;
};

ConstructibleFunction indicator(const CellSet& s);
inline ConstructibleFunction indicator(const OpenSet& s) { return indicator(s.cells()); }

/// Sum of coeff * indicator(set) over the terms of `e`.
ConstructibleFunction alpha(const GroupExpression& e);

ConstructibleFunction add(const ConstructibleFunction& f, const ConstructibleFunction& g);
ConstructibleFunction negate(const ConstructibleFunction& f);
bool is_zero(const ConstructibleFunction& f);
bool equals(const ConstructibleFunction& f, const ConstructibleFunction& g);
std::int64_t evaluate(const ConstructibleFunction& f, CellId c);
std::optional<CellId> first_nonzero_cell(const ConstructibleFunction& f);

/// Writes the indicator of the locally closed set u ∩ c as u - (u \ c).
/// `c` must be closed, which makes u \ c open.
GroupExpression decompose_locally_closed(const OpenSet& u, const CellSet& c);

/// A canonical expression whose image under alpha is exactly `f`, built from
/// the open star of every cell in the support.
GroupExpression decompose(const ConstructibleFunction& f);

}  // namespace cf
