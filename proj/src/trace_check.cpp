// Certificate replay. Deliberately avoids mv_step and the pair finder so a
// bug there cannot vouch for itself.

#include <cstdlib>
#include <map>

#include "cf/engine.hpp"

namespace cf {

namespace {

using Coefficients = std::map<OpenSet, std::int64_t, SetOrder>;

Coefficients coefficients(const GroupExpression& e) {
  Coefficients out;
  for (const Term& t : e.terms()) out.emplace(t.set, t.coeff);
  return out;
}

std::int64_t lookup(const Coefficients& c, const OpenSet& s) {
  auto it = c.find(s);
  return it == c.end() ? 0 : it->second;
}

bool any_overlap(const GroupExpression& e, bool same_sign_only) {
  const auto& terms = e.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (same_sign_only && (terms[i].coeff > 0) != (terms[j].coeff > 0)) continue;
      if (overlaps(terms[i].set, terms[j].set)) return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::string> find_trace_error(const RewriteTrace& t) {
  if (!is_canonical(t.initial)) return "initial expression is not canonical";

  GroupExpression current = t.initial;
  const ConstructibleFunction target = alpha(current);
  Rational weight = stats(current).weight;

  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const StepRecord& step = t.steps[i];
    const std::string where = "step " + std::to_string(i) + ": ";
    Coefficients coeff = coefficients(current);
    const std::int64_t a = lookup(coeff, step.heavy);
    const std::int64_t b = lookup(coeff, step.light);
    if (a == 0 || b == 0) return where + "pair is not present in the expression";
    if (step.heavy == step.light) return where + "pair repeats one set";
    if ((a > 0) != (b > 0)) return where + "pair coefficients differ in sign";
    if (std::abs(a) < std::abs(b)) return where + "pair is misoriented";
    if (!overlaps(step.heavy, step.light)) return where + "pair does not overlap";

    std::vector<Term> expected;
    if (a != b) expected.push_back(Term{a - b, step.heavy});
    CellSet joined(current.arrangement(), step.heavy.bits() | step.light.bits());
    expected.push_back(Term{b, make_open_set(joined)});
    CellSet met(current.arrangement(), step.heavy.bits() & step.light.bits());
    for (const OpenSet& part : connected_components(make_open_set(met))) {
      expected.push_back(Term{b, part});
    }
    if (expected != step.produced) return where + "produced terms do not match the replacement";

    coeff.erase(step.heavy);
    coeff.erase(step.light);
    std::size_t cancellations = 0;
    for (const Term& p : expected) {
      const std::int64_t existing = lookup(coeff, p.set);
      if (existing != 0 && (existing > 0) != (p.coeff > 0)) ++cancellations;
      coeff[p.set] = existing + p.coeff;
    }
    if (cancellations != step.cancellations) return where + "cancellation count mismatch";

    std::vector<Term> next;
    for (const auto& [set, c] : coeff) next.push_back(Term{c, set});
    current = make_expression(current.arrangement(), next);

    if (!(alpha(current) == target)) return where + "function not preserved";
    const ExprStats after = stats(current);
    if (after.weight != step.stats_after.weight) return where + "recorded weight mismatch";
    if (after.max_coeff != step.stats_after.max_coeff) return where + "recorded max_coeff mismatch";
    if (after.weight > weight) return where + "weight increased";
    if ((after.weight < weight) != (cancellations > 0)) {
      return where + "weight decrease does not match cancellations";
    }
    weight = after.weight;
  }

  if (!(current == t.final_expr)) return "final expression does not match the replay";

  const bool overlapping = any_overlap(current, false);
  switch (t.status) {
    case Status::kEmptyReached:
      if (!current.empty()) return "status EmptyReached but final expression is not empty";
      break;
    case Status::kLaminarNoOverlap:
      if (current.empty() || overlapping) return "status LaminarNoOverlap is inconsistent";
      break;
    case Status::kNoSameSignPair:
      if (!overlapping || any_overlap(current, true)) return "status NoSameSignPair is inconsistent";
      break;
    case Status::kStepBudgetExceeded:
      if (!overlapping) return "status StepBudgetExceeded but no overlaps remain";
      break;
  }
  return std::nullopt;
}

}  // namespace cf
