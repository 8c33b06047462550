#include "cf/expressions.hpp"

#include <cstdlib>
#include <map>

namespace cf {

bool set_order_less(const OpenSet& a, const OpenSet& b) {
  const CellBits& x = a.bits();
  const CellBits& y = b.bits();
  auto fx = x.find_first();
  auto fy = y.find_first();
  if (fx != fy) return fx < fy;
  const auto nx = x.count();
  const auto ny = y.count();
  if (nx != ny) return nx < ny;
  while (fx != CellBits::npos && fy != CellBits::npos) {
    if (fx != fy) return fx < fy;
    fx = x.find_next(fx);
    fy = y.find_next(fy);
  }
  return false;
}

std::int64_t GroupExpression::coefficient_of(const OpenSet& set) const {
  for (const Term& t : terms_) {
    if (t.set == set) return t.coeff;
  }
  return 0;
}

GroupExpression make_expression(const ArrangementPtr& arr, const std::vector<Term>& terms) {
  std::map<OpenSet, std::int64_t, SetOrder> merged;
  for (const Term& t : terms) {
    require_same_arrangement(arr, t.set.arrangement());
    if (t.coeff == 0 || t.set.empty()) continue;
    auto [it, inserted] = merged.try_emplace(t.set, t.coeff);
    if (!inserted) it->second += t.coeff;
  }
  GroupExpression out(arr);
  for (auto& [set, coeff] : merged) {
    if (coeff != 0) out.terms_.push_back(Term{coeff, set});
  }
  return out;
}

GroupExpression canonicalize(const GroupExpression& e) {
  std::vector<Term> split;
  for (const Term& t : e.terms()) {
    for (OpenSet& part : connected_components(t.set)) split.push_back(Term{t.coeff, std::move(part)});
  }
  return make_expression(e.arrangement(), split);
}

bool is_canonical(const GroupExpression& e) {
  const auto& terms = e.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coeff == 0 || terms[i].set.empty() || !is_connected(terms[i].set)) return false;
    if (i > 0 && !set_order_less(terms[i - 1].set, terms[i].set)) return false;
  }
  return true;
}

GroupExpression add(const GroupExpression& a, const GroupExpression& b) {
  require_same_arrangement(a.arrangement(), b.arrangement());
  std::vector<Term> all = a.terms();
  all.insert(all.end(), b.terms().begin(), b.terms().end());
  return make_expression(a.arrangement(), all);
}

GroupExpression subtract(const GroupExpression& a, const GroupExpression& b) {
  return add(a, scale(b, -1));
}

GroupExpression scale(const GroupExpression& e, std::int64_t factor) {
  std::vector<Term> terms = e.terms();
  for (Term& t : terms) t.coeff *= factor;
  return make_expression(e.arrangement(), terms);
}

ExprStats stats(const GroupExpression& e) {
  ExprStats s;
  const auto& terms = e.terms();
  s.term_count = terms.size();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::int64_t mag = std::abs(terms[i].coeff);
    s.weight += Rational(mag) * measure(terms[i].set);
    s.max_coeff = std::max(s.max_coeff, mag);
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (overlaps(terms[i].set, terms[j].set)) ++s.overlap_count;
    }
  }
  return s;
}

}  // namespace cf
