#include "cf/functions.hpp"

#include <stdexcept>

namespace cf {

ConstructibleFunction::ConstructibleFunction(ArrangementPtr arr)
    : arr_(std::move(arr)), values_(arr_->size(), 0) {}

ConstructibleFunction::ConstructibleFunction(ArrangementPtr arr, std::vector<std::int64_t> values)
    : arr_(std::move(arr)), values_(std::move(values)) {
  if (values_.size() != arr_->size()) {
    throw std::invalid_argument("function must have one value per cell");
  }
}

ConstructibleFunction indicator(const CellSet& s) {
  std::vector<std::int64_t> values(s.arrangement()->size(), 0);
  const auto& bits = s.bits();
  for (auto c = bits.find_first(); c != CellBits::npos; c = bits.find_next(c)) values[c] = 1;
  return ConstructibleFunction(s.arrangement(), std::move(values));
}

ConstructibleFunction alpha(const GroupExpression& e) {
  std::vector<std::int64_t> values(e.arrangement()->size(), 0);
  for (const Term& t : e.terms()) {
    require_same_arrangement(e.arrangement(), t.set.arrangement());
    const auto& bits = t.set.bits();
    for (auto c = bits.find_first(); c != CellBits::npos; c = bits.find_next(c)) {
      values[c] += t.coeff;
    }
  }
  return ConstructibleFunction(e.arrangement(), std::move(values));
}

ConstructibleFunction add(const ConstructibleFunction& f, const ConstructibleFunction& g) {
  require_same_arrangement(f.arrangement(), g.arrangement());
  std::vector<std::int64_t> values = f.values();
  for (std::size_t c = 0; c < values.size(); ++c) values[c] += g.values()[c];
  return ConstructibleFunction(f.arrangement(), std::move(values));
}

ConstructibleFunction negate(const ConstructibleFunction& f) {
  std::vector<std::int64_t> values = f.values();
  for (auto& v : values) v = -v;
  return ConstructibleFunction(f.arrangement(), std::move(values));
}

bool is_zero(const ConstructibleFunction& f) { return !first_nonzero_cell(f).has_value(); }

bool equals(const ConstructibleFunction& f, const ConstructibleFunction& g) {
  require_same_arrangement(f.arrangement(), g.arrangement());
  return f.values() == g.values();
}

std::int64_t evaluate(const ConstructibleFunction& f, CellId c) { return f(c); }

std::optional<CellId> first_nonzero_cell(const ConstructibleFunction& f) {
  for (CellId c = 0; c < f.values().size(); ++c) {
    if (f.values()[c] != 0) return c;
  }
  return std::nullopt;
}

GroupExpression decompose_locally_closed(const OpenSet& u, const CellSet& c) {
  require_same_arrangement(u.arrangement(), c.arrangement());
  if (!is_closed(c)) throw std::invalid_argument("decompose_locally_closed needs a closed set");
  CellSet rest = cell_difference(u.cells(), c);
  if (!is_open(rest)) throw InvariantViolation("open minus closed is not open");
  return make_expression(u.arrangement(), {Term{1, u}, Term{-1, make_open_set(rest)}});
}

GroupExpression decompose(const ConstructibleFunction& f) {
  const ArrangementPtr& arr = f.arrangement();
  std::vector<Term> terms;
  for (CellId c = 0; c < arr->size(); ++c) {
    const std::int64_t value = f(c);
    if (value == 0) continue;
    // c is locally closed: star(c) ∩ closure(c) = {c}.
    OpenSet star = open_star(arr, c);
    GroupExpression piece = decompose_locally_closed(star, closure(CellSet::single(arr, c)));
    for (const Term& t : piece.terms()) terms.push_back(Term{value * t.coeff, t.set});
  }
  return canonicalize(make_expression(arr, terms));
}

}  // namespace cf
