#pragma once

// Mayer-Vietoris rewriting of expressions toward a laminar normal form.
//
// A step takes two overlapping terms a*U + b*V with a, b of the same sign and
// |a| >= |b| and replaces them by
//
//     (a - b)*U + b*(U ∪ V) + b*C_1 + ... + b*C_m
//
// where C_i are the connected components of U ∩ V. The function is unchanged
// pointwise, and the weight sum |coeff| * measure(set) never increases; it
// drops exactly when a produced term merges with an opposite-sign term.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cf/expressions.hpp"
#include "cf/functions.hpp"

namespace cf {

inline constexpr std::size_t kDefaultMaxSteps = 100000;

enum class Strategy { kFirstFound, kMaxCancellation, kMinIntersection };

std::string to_string(Strategy s);
/// Accepts "first", "max-cancel", "min-intersection".
Strategy parse_strategy(const std::string& name);

/// Coefficient placed on the intersection components. kGreater is a
/// deliberately wrong rule kept so tests can show the oracles reject it.
enum class IntersectionCoefficient { kLesser, kGreater };

enum class Status { kEmptyReached, kLaminarNoOverlap, kNoSameSignPair, kStepBudgetExceeded };

std::string to_string(Status s);
Status parse_status(const std::string& name);

/// Indices into GroupExpression::terms(); |coeff(heavy)| >= |coeff(light)|.
struct PairChoice {
  std::size_t heavy;
  std::size_t light;
};

struct StepRecord {
  OpenSet heavy;
  OpenSet light;
  std::vector<Term> produced;
  std::size_t cancellations = 0;
  ExprStats stats_after;
};

struct RewriteTrace {
  GroupExpression initial;
  std::vector<StepRecord> steps;
  GroupExpression final_expr;
  Status status;
};

std::optional<PairChoice> find_same_sign_overlap(const GroupExpression& e, Strategy s);

struct StepResult {
  GroupExpression after;
  StepRecord record;
};

/// Applies one replacement to a canonical expression. Throws
/// std::invalid_argument if the pair is not a same-sign overlap in the right
/// orientation. With the correct rule the function identity and the weight
/// law are checked and an InvariantViolation is thrown on failure.
StepResult mv_step(const GroupExpression& e, PairChoice pair,
                   IntersectionCoefficient rule = IntersectionCoefficient::kLesser);

RewriteTrace normalize(const GroupExpression& e, Strategy s = Strategy::kFirstFound,
                       std::size_t max_steps = kDefaultMaxSteps);

bool is_laminar(const GroupExpression& e);

/// Evidence that a nonempty laminar expression is not the zero function:
/// a maximal set, a maximal proper subset of it (if any), and a cell where
/// the function equals the outer coefficient.
struct LaminarWitness {
  std::size_t outer;
  std::optional<std::size_t> inner;
  CellId cell;
  std::int64_t value;
};

/// Witness for a nonempty canonical laminar expression; nullopt when empty.
std::optional<LaminarWitness> laminar_witness(const GroupExpression& e);

/// Checks that a canonical laminar expression with zero image is empty.
/// Throws std::invalid_argument when a precondition fails; returns the
/// witness if the expression is nonempty anyway.
std::optional<LaminarWitness> check_zero_laminar(const GroupExpression& e);

class NotZero : public Error {
 public:
  NotZero(CellId cell, std::int64_t value);
  CellId cell() const { return cell_; }
  std::int64_t value() const { return value_; }

 private:
  CellId cell_;
  std::int64_t value_;
};

class StepBudgetExceeded : public Error {
 public:
  explicit StepBudgetExceeded(RewriteTrace trace);
  const RewriteTrace& trace() const { return trace_; }

 private:
  RewriteTrace trace_;
};

/// Rewrites an expression with zero image down to the empty expression and
/// returns the steps as a certificate. Throws NotZero or StepBudgetExceeded.
RewriteTrace certify_zero(const GroupExpression& e, Strategy s = Strategy::kFirstFound,
                          std::size_t max_steps = kDefaultMaxSteps);

struct EqualityVerdict {
  bool equal = false;
  std::optional<RewriteTrace> certificate;
};

/// Decides a == b modulo the Mayer-Vietoris relations; when equal the
/// certificate rewrites a - b to the empty expression.
EqualityVerdict equal_in_group(const GroupExpression& a, const GroupExpression& b,
                               Strategy s = Strategy::kFirstFound,
                               std::size_t max_steps = kDefaultMaxSteps);

/// Replays a trace step by step without using the engine. Returns the first
/// problem found, or nullopt for a valid trace.
std::optional<std::string> find_trace_error(const RewriteTrace& t);
inline bool verify_trace(const RewriteTrace& t) { return !find_trace_error(t).has_value(); }

/// Steps after which max |coeff| is larger than before the step.
std::size_t count_max_coeff_increases(const RewriteTrace& t);

}  // namespace cf
