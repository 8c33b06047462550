#include "cf/engine.hpp"

#include <cstdlib>
#include <stdexcept>

namespace cf {

namespace {

bool same_sign(std::int64_t a, std::int64_t b) { return (a > 0) == (b > 0); }

// Orders a same-sign pair so the first index has the larger magnitude; ties
// go to the earlier term.
PairChoice orient(const GroupExpression& e, std::size_t i, std::size_t j) {
  const auto& terms = e.terms();
  if (std::abs(terms[j].coeff) > std::abs(terms[i].coeff)) return {j, i};
  return {i, j};
}

// Produced terms of one replacement, before merging.
std::vector<Term> replacement_terms(const Term& heavy, const Term& light,
                                    IntersectionCoefficient rule) {
  std::vector<Term> produced;
  if (heavy.coeff != light.coeff) produced.push_back(Term{heavy.coeff - light.coeff, heavy.set});
  produced.push_back(Term{light.coeff, unite(heavy.set, light.set)});
  const std::int64_t meet_coeff =
      rule == IntersectionCoefficient::kLesser ? light.coeff : heavy.coeff;
  for (OpenSet& part : connected_components(intersect(heavy.set, light.set))) {
    produced.push_back(Term{meet_coeff, std::move(part)});
  }
  return produced;
}

std::size_t count_cancellations(const GroupExpression& e, PairChoice pair,
                                const std::vector<Term>& produced) {
  std::size_t cancellations = 0;
  const auto& terms = e.terms();
  for (const Term& p : produced) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i == pair.heavy || i == pair.light) continue;
      if (terms[i].set == p.set && !same_sign(terms[i].coeff, p.coeff)) ++cancellations;
    }
  }
  return cancellations;
}

}  // namespace

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kFirstFound: return "first";
    case Strategy::kMaxCancellation: return "max-cancel";
    case Strategy::kMinIntersection: return "min-intersection";
  }
  return "unknown";
}

Strategy parse_strategy(const std::string& name) {
  for (Strategy s : {Strategy::kFirstFound, Strategy::kMaxCancellation, Strategy::kMinIntersection}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::kEmptyReached: return "EmptyReached";
    case Status::kLaminarNoOverlap: return "LaminarNoOverlap";
    case Status::kNoSameSignPair: return "NoSameSignPair";
    case Status::kStepBudgetExceeded: return "StepBudgetExceeded";
  }
  return "unknown";
}

Status parse_status(const std::string& name) {
  for (Status s : {Status::kEmptyReached, Status::kLaminarNoOverlap, Status::kNoSameSignPair,
                   Status::kStepBudgetExceeded}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown status '" + name + "'");
}

std::optional<PairChoice> find_same_sign_overlap(const GroupExpression& e, Strategy s) {
  const auto& terms = e.terms();
  std::optional<PairChoice> best;
  std::size_t best_cancel = 0;
  Rational best_meet(0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (!same_sign(terms[i].coeff, terms[j].coeff)) continue;
      if (!overlaps(terms[i].set, terms[j].set)) continue;
      const PairChoice pair = orient(e, i, j);
      switch (s) {
        case Strategy::kFirstFound:
          return pair;
        case Strategy::kMaxCancellation: {
          const auto produced = replacement_terms(terms[pair.heavy], terms[pair.light],
                                                  IntersectionCoefficient::kLesser);
          const std::size_t cancel = count_cancellations(e, pair, produced);
          if (!best || cancel > best_cancel) {
            best = pair;
            best_cancel = cancel;
          }
          break;
        }
        case Strategy::kMinIntersection: {
          const Rational meet = measure(intersect(terms[i].set, terms[j].set));
          if (!best || meet < best_meet) {
            best = pair;
            best_meet = meet;
          }
          break;
        }
      }
    }
  }
  return best;
}

StepResult mv_step(const GroupExpression& e, PairChoice pair, IntersectionCoefficient rule) {
  const auto& terms = e.terms();
  if (pair.heavy >= terms.size() || pair.light >= terms.size() || pair.heavy == pair.light) {
    throw std::invalid_argument("mv_step: pair indices out of range");
  }
  const Term& heavy = terms[pair.heavy];
  const Term& light = terms[pair.light];
  if (!same_sign(heavy.coeff, light.coeff)) {
    throw std::invalid_argument("mv_step: coefficients differ in sign");
  }
  if (std::abs(heavy.coeff) < std::abs(light.coeff)) {
    throw std::invalid_argument("mv_step: first coefficient must dominate in magnitude");
  }
  if (!overlaps(heavy.set, light.set)) throw std::invalid_argument("mv_step: sets do not overlap");

  std::vector<Term> produced = replacement_terms(heavy, light, rule);
  const std::size_t cancellations = count_cancellations(e, pair, produced);

  std::vector<Term> merged;
  merged.reserve(terms.size() + produced.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i != pair.heavy && i != pair.light) merged.push_back(terms[i]);
  }
  merged.insert(merged.end(), produced.begin(), produced.end());
  GroupExpression after = make_expression(e.arrangement(), merged);
  ExprStats after_stats = stats(after);

  if (rule == IntersectionCoefficient::kLesser) {
    if (!(alpha(after) == alpha(e))) throw InvariantViolation("mv_step changed the function");
    const Rational before_weight = stats(e).weight;
    const bool strict = after_stats.weight < before_weight;
    if (after_stats.weight > before_weight || strict != (cancellations > 0)) {
      throw InvariantViolation("mv_step broke the weight law");
    }
  }

  StepRecord record{heavy.set, light.set, std::move(produced), cancellations, after_stats};
  return StepResult{std::move(after), std::move(record)};
}

RewriteTrace normalize(const GroupExpression& e, Strategy s, std::size_t max_steps) {
  GroupExpression current = canonicalize(e);
  RewriteTrace trace{current, {}, current, Status::kEmptyReached};
  while (true) {
    if (is_laminar(current)) {
      trace.status = current.empty() ? Status::kEmptyReached : Status::kLaminarNoOverlap;
      break;
    }
    if (trace.steps.size() >= max_steps) {
      trace.status = Status::kStepBudgetExceeded;
      break;
    }
    auto pair = find_same_sign_overlap(current, s);
    if (!pair) {
      trace.status = Status::kNoSameSignPair;
      break;
    }
    StepResult step = mv_step(current, *pair);
    current = std::move(step.after);
    trace.steps.push_back(std::move(step.record));
  }
  trace.final_expr = current;
  return trace;
}

bool is_laminar(const GroupExpression& e) {
  const auto& terms = e.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (overlaps(terms[i].set, terms[j].set)) return false;
    }
  }
  return true;
}

std::optional<LaminarWitness> laminar_witness(const GroupExpression& e) {
  const auto& terms = e.terms();
  if (terms.empty()) return std::nullopt;
  auto strictly_inside = [&](std::size_t a, std::size_t b) {
    return a != b && is_subset(terms[a].set, terms[b].set);
  };

  std::size_t outer = 0;
  for (; outer < terms.size(); ++outer) {
    bool maximal = true;
    for (std::size_t k = 0; k < terms.size() && maximal; ++k) maximal = !strictly_inside(outer, k);
    if (maximal) break;
  }
  std::optional<std::size_t> inner;
  for (std::size_t k = 0; k < terms.size() && !inner; ++k) {
    if (!strictly_inside(k, outer)) continue;
    bool maximal = true;
    for (std::size_t l = 0; l < terms.size() && maximal; ++l) {
      maximal = !(strictly_inside(k, l) && strictly_inside(l, outer));
    }
    if (maximal) inner = k;
  }

  std::optional<CellId> cell;
  if (inner) {
    cell = witness_boundary_cell(terms[outer].set, terms[*inner].set);
  } else {
    cell = terms[outer].set.cells().first();
  }
  if (!cell) throw InvariantViolation("laminar witness: outer set is not connected");
  return LaminarWitness{outer, inner, *cell, alpha(e)(*cell)};
}

std::optional<LaminarWitness> check_zero_laminar(const GroupExpression& e) {
  if (!is_canonical(e)) throw std::invalid_argument("check_zero_laminar: expression not canonical");
  if (!is_laminar(e)) throw std::invalid_argument("check_zero_laminar: expression not laminar");
  if (!is_zero(alpha(e))) throw std::invalid_argument("check_zero_laminar: function is not zero");
  return laminar_witness(e);
}

NotZero::NotZero(CellId cell, std::int64_t value)
    : Error("expression is not zero: value " + std::to_string(value) + " at cell " +
            std::to_string(cell)),
      cell_(cell),
      value_(value) {}

StepBudgetExceeded::StepBudgetExceeded(RewriteTrace trace)
    : Error("step budget exhausted after " + std::to_string(trace.steps.size()) + " steps"),
      trace_(std::move(trace)) {}

RewriteTrace certify_zero(const GroupExpression& e, Strategy s, std::size_t max_steps) {
  const ConstructibleFunction f = alpha(e);
  if (auto cell = first_nonzero_cell(f)) throw NotZero(*cell, f(*cell));

  RewriteTrace trace = normalize(e, s, max_steps);
  switch (trace.status) {
    case Status::kEmptyReached:
      return trace;
    case Status::kStepBudgetExceeded:
      throw StepBudgetExceeded(std::move(trace));
    case Status::kLaminarNoOverlap:
      if (auto w = check_zero_laminar(trace.final_expr)) {
        throw InvariantViolation("nonempty laminar zero expression; witness cell " +
                                 std::to_string(w->cell) + " has value " +
                                 std::to_string(w->value));
      }
      throw InvariantViolation("laminar status on an empty expression");
    case Status::kNoSameSignPair:
      throw InvariantViolation("zero expression with overlaps but no same-sign pair");
  }
  return trace;
}

EqualityVerdict equal_in_group(const GroupExpression& a, const GroupExpression& b, Strategy s,
                               std::size_t max_steps) {
  require_same_arrangement(a.arrangement(), b.arrangement());
  GroupExpression difference = subtract(a, b);
  if (!is_zero(alpha(difference))) return EqualityVerdict{false, std::nullopt};
  return EqualityVerdict{true, certify_zero(difference, s, max_steps)};
}

std::size_t count_max_coeff_increases(const RewriteTrace& t) {
  std::size_t increases = 0;
  std::int64_t previous = stats(t.initial).max_coeff;
  for (const StepRecord& step : t.steps) {
    if (step.stats_after.max_coeff > previous) ++increases;
    previous = step.stats_after.max_coeff;
  }
  return increases;
}

}  // namespace cf
