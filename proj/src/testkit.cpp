#include "cf/testkit.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace cf::testkit {

namespace {

// Stream ids keep each property's random draws independent of the others.
enum Stream : std::uint64_t {
  kKernelStream = 1,
  kStepStream,
  kInjectivityStream,
  kEndStateStream,
  kLaminarStream,
  kSurjectivityStream,
  kEqualityStream,
  kHomomorphismStream,
  kCanonicalizeStream,
  kGeometryStream,
};

constexpr Strategy kStrategies[] = {Strategy::kFirstFound, Strategy::kMaxCancellation,
                                    Strategy::kMinIntersection};

// Per-cell evaluation straight from membership tests; shares no code with
// alpha() beyond OpenSet::contains.
std::vector<std::int64_t> oracle_values(const GroupExpression& e) {
  std::vector<std::int64_t> values(e.arrangement()->size(), 0);
  for (CellId c = 0; c < values.size(); ++c) {
    for (const Term& t : e.terms()) {
      if (t.set.contains(c)) values[c] += t.coeff;
    }
  }
  return values;
}

bool all_zero(const std::vector<std::int64_t>& values) {
  return std::all_of(values.begin(), values.end(), [](std::int64_t v) { return v == 0; });
}

Rational oracle_weight(const GroupExpression& e) {
  Rational total(0);
  const auto& arr = *e.arrangement();
  for (const Term& t : e.terms()) {
    for (CellId c = 0; c < arr.size(); ++c) {
      if (t.set.contains(c)) total += Rational(std::abs(t.coeff)) * arr.weight(c);
    }
  }
  return total;
}

Backend pick_backend(Rng& rng) { return kAllBackends[uniform(rng, 0, 2)]; }

Json instance_json(const GroupExpression& e) {
  return {{"arrangement", arrangement_to_json(*e.arrangement())},
          {"expression", expression_to_json(e)}};
}

PropertyResult make_result(std::string name, std::size_t trials) {
  PropertyResult r;
  r.name = std::move(name);
  r.trials = trials;
  return r;
}

void note_failure(PropertyResult& r, std::size_t trial, const std::string& why,
                  std::optional<Json> counterexample = std::nullopt) {
  ++r.failures;
  if (!r.first_failure) {
    r.first_failure = trial;
    r.note = why;
    r.counterexample = std::move(counterexample);
  }
}

// Smaller arrangements for the properties that run the full engine.
GeneratorConfig engine_config(const SuiteConfig& cfg) {
  GeneratorConfig g;
  g.seed = cfg.seed;
  g.max_breakpoints = 24;
  g.max_grid_side = 8;
  g.max_terms = 6;
  g.coeff_bound = 5;
  g.mv_instances = 8;
  return g;
}

GeneratorConfig default_config(const SuiteConfig& cfg) {
  GeneratorConfig g;
  g.seed = cfg.seed;
  return g;
}

std::vector<PairChoice> same_sign_pairs(const GroupExpression& e) {
  std::vector<PairChoice> out;
  const auto& terms = e.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if ((terms[i].coeff > 0) != (terms[j].coeff > 0)) continue;
      if (!overlaps(terms[i].set, terms[j].set)) continue;
      if (std::abs(terms[j].coeff) > std::abs(terms[i].coeff)) {
        out.push_back({j, i});
      } else {
        out.push_back({i, j});
      }
    }
  }
  return out;
}

// First same-sign pair whose replacement under `rule` changes the function.
std::optional<PairChoice> failing_step(const GroupExpression& e, IntersectionCoefficient rule) {
  const auto before = oracle_values(e);
  for (PairChoice pair : same_sign_pairs(e)) {
    try {
      if (oracle_values(mv_step(e, pair, rule).after) != before) return pair;
    } catch (const InvariantViolation&) {
      return pair;
    }
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// Generators

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

std::int64_t nonzero_coeff(Rng& rng, std::int64_t bound) {
  std::int64_t v = uniform(rng, 1, bound);
  return uniform(rng, 0, 1) == 0 ? v : -v;
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::kSegment: return "segment";
    case Backend::kCircle: return "circle";
    case Backend::kGrid: return "grid";
  }
  return "unknown";
}

ArrangementPtr random_arrangement(Backend b, Rng& rng, const GeneratorConfig& cfg) {
  ArrangementPtr arr;
  if (b == Backend::kGrid) {
    const auto side = static_cast<std::int64_t>(cfg.max_grid_side);
    arr = build_grid_arrangement(uniform(rng, 1, side), uniform(rng, 1, side));
  } else {
    const auto max_bp = static_cast<std::int64_t>(cfg.max_breakpoints);
    const std::int64_t n = b == Backend::kSegment ? uniform(rng, 2, std::max<std::int64_t>(2, max_bp))
                                                  : uniform(rng, 1, max_bp);
    std::vector<Rational> breakpoints;
    Rational x(uniform(rng, -5, 5));
    for (std::int64_t i = 0; i < n; ++i) {
      breakpoints.push_back(x);
      x += Rational(uniform(rng, 1, 4), uniform(rng, 1, 3));
    }
    arr = build_interval_arrangement(std::move(breakpoints),
                                     b == Backend::kSegment ? Ambient::kSegment : Ambient::kCircle);
  }
  if (uniform(rng, 0, 1) == 1) {
    std::map<CellId, Rational> weights;
    for (CellId c = 0; c < arr->size(); ++c) {
      weights[c] = Rational(uniform(rng, 1, 9), uniform(rng, 1, 9));
    }
    arr = with_weights(arr, weights);
  }
  return arr;
}

OpenSet random_open_set(const ArrangementPtr& arr, Rng& rng) {
  CellBits bits(arr->size());
  const std::int64_t patches = uniform(rng, 1, 3);
  for (std::int64_t p = 0; p < patches; ++p) {
    if (arr->ambient() == Ambient::kGrid) {
      // Cells in doubled coordinates: (even, even) vertices, (odd, odd) squares.
      const auto xs = static_cast<std::int64_t>(2 * arr->rows());
      const auto ys = static_cast<std::int64_t>(2 * arr->cols());
      std::int64_t x0 = uniform(rng, 0, xs), x1 = uniform(rng, 0, xs);
      std::int64_t y0 = uniform(rng, 0, ys), y1 = uniform(rng, 0, ys);
      if (x0 > x1) std::swap(x0, x1);
      if (y0 > y1) std::swap(y0, y1);
      const std::size_t rows = arr->rows(), cols = arr->cols();
      const std::size_t nv = (rows + 1) * (cols + 1);
      const std::size_t nh = (rows + 1) * cols;
      const std::size_t nvert = rows * (cols + 1);
      for (std::int64_t x = x0; x <= x1; ++x) {
        for (std::int64_t y = y0; y <= y1; ++y) {
          const std::size_t r = static_cast<std::size_t>(x / 2);
          const std::size_t c = static_cast<std::size_t>(y / 2);
          CellId cell;
          if (x % 2 == 0 && y % 2 == 0) {
            cell = r * (cols + 1) + c;
          } else if (x % 2 == 0) {
            cell = nv + r * cols + c;
          } else if (y % 2 == 0) {
            cell = nv + nh + r * (cols + 1) + c;
          } else {
            cell = nv + nh + nvert + r * cols + c;
          }
          bits.set(cell);
        }
      }
    } else {
      const auto n = static_cast<std::int64_t>(arr->size());
      const std::int64_t start = uniform(rng, 0, n - 1);
      const std::int64_t length = uniform(rng, 1, n);
      for (std::int64_t i = 0; i < length; ++i) {
        const std::int64_t c = start + i;
        if (arr->ambient() == Ambient::kCircle) {
          bits.set(static_cast<std::size_t>(c % n));
        } else if (c < n) {
          bits.set(static_cast<std::size_t>(c));
        }
      }
    }
  }
  return up_closure(CellSet(arr, std::move(bits)));
}

GroupExpression random_expression(const ArrangementPtr& arr, Rng& rng, const GeneratorConfig& cfg) {
  std::vector<Term> terms;
  const std::int64_t count = uniform(rng, 1, static_cast<std::int64_t>(cfg.max_terms));
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t coeff = nonzero_coeff(rng, cfg.coeff_bound);
    terms.push_back(Term{coeff, random_open_set(arr, rng)});
  }
  return make_expression(arr, terms);
}

GroupExpression random_zero_expression(const ArrangementPtr& arr, Rng& rng,
                                       const GeneratorConfig& cfg) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < cfg.mv_instances; ++i) {
    const std::int64_t c = nonzero_coeff(rng, cfg.coeff_bound);
    OpenSet u = random_open_set(arr, rng);
    OpenSet v = random_open_set(arr, rng);
    terms.push_back(Term{c, u});
    terms.push_back(Term{c, v});
    terms.push_back(Term{-c, unite(u, v)});
    terms.push_back(Term{-c, intersect(u, v)});
  }
  GroupExpression e = canonicalize(make_expression(arr, terms));
  if (!all_zero(oracle_values(e))) throw InvariantViolation("relation sum has nonzero image");
  return e;
}

GroupExpression random_laminar_expression(const ArrangementPtr& arr, Rng& rng,
                                          const GeneratorConfig& cfg) {
  const auto target = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(cfg.max_terms)));
  std::vector<Term> terms;
  for (std::size_t attempt = 0; attempt < 50 * target && terms.size() < target; ++attempt) {
    auto parts = connected_components(random_open_set(arr, rng));
    OpenSet candidate = parts[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(parts.size()) - 1))];
    bool fits = true;
    for (const Term& t : terms) {
      if (t.set == candidate || overlaps(t.set, candidate)) {
        fits = false;
        break;
      }
    }
    if (fits) terms.push_back(Term{nonzero_coeff(rng, cfg.coeff_bound), std::move(candidate)});
  }
  return make_expression(arr, terms);
}

ConstructibleFunction random_function(const ArrangementPtr& arr, Rng& rng,
                                      const GeneratorConfig& cfg) {
  std::vector<std::int64_t> values(arr->size());
  for (auto& v : values) v = uniform(rng, -cfg.coeff_bound, cfg.coeff_bound);
  return ConstructibleFunction(arr, std::move(values));
}

GroupExpression minimize_expression(const GroupExpression& e,
                                    const std::function<bool(const GroupExpression&)>& still_fails) {
  GroupExpression current = e;
  bool progress = true;
  while (progress) {
    progress = false;
    const auto terms = current.terms();
    for (std::size_t i = 0; i < terms.size() && !progress; ++i) {
      std::vector<Term> fewer = terms;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      GroupExpression candidate = make_expression(current.arrangement(), fewer);
      if (still_fails(candidate)) {
        current = std::move(candidate);
        progress = true;
      }
    }
    for (std::size_t i = 0; i < terms.size() && !progress; ++i) {
      for (CellId c : terms[i].set.cells().cells()) {
        CellBits bits = terms[i].set.bits();
        bits.reset(c);
        CellSet smaller(current.arrangement(), std::move(bits));
        if (smaller.empty() || !is_open(smaller)) continue;
        std::vector<Term> shrunk = terms;
        shrunk[i].set = make_open_set(smaller);
        GroupExpression candidate = make_expression(current.arrangement(), shrunk);
        if (still_fails(candidate)) {
          current = std::move(candidate);
          progress = true;
          break;
        }
      }
    }
  }
  return current;
}

// ---------------------------------------------------------------------------
// Step ledger

void StepLedger::record(const RewriteTrace& t) {
  ExprStats before = stats(t.initial);
  for (const StepRecord& step : t.steps) {
    ++steps;
    const Rational& w = step.stats_after.weight;
    if (w > before.weight || (w < before.weight) != (step.cancellations > 0)) ++weight_violations;
    if (step.stats_after.max_coeff > before.max_coeff) ++max_coeff_increases;
    before = step.stats_after;
  }
}

std::size_t SuiteReport::failures() const {
  std::size_t total = ledger.weight_violations;
  for (const auto& p : properties) total += p.failures;
  return total;
}

// ---------------------------------------------------------------------------
// Properties

PropertyResult check_mv_kernel(const SuiteConfig& cfg, Backend b, std::size_t trials) {
  PropertyResult r = make_result("mv_kernel[" + to_string(b) + "]", trials);
  const GeneratorConfig g = default_config(cfg);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kKernelStream * 16 + static_cast<std::uint64_t>(b), trial);
    ArrangementPtr arr = random_arrangement(b, rng, g);
    OpenSet u = random_open_set(arr, rng);
    OpenSet v = random_open_set(arr, rng);
    GroupExpression e = make_expression(
        arr, {Term{1, u}, Term{1, v}, Term{-1, unite(u, v)}, Term{-1, intersect(u, v)}});
    const ConstructibleFunction f = alpha(e);
    if (!is_zero(f) || f.values() != oracle_values(e)) {
      note_failure(r, trial, "relation has nonzero image", instance_json(e));
    }
  }
  return r;
}

PropertyResult check_step_identity(const SuiteConfig& cfg, std::size_t trials,
                                   IntersectionCoefficient rule, StepLedger* ledger) {
  const bool hooked = rule == IntersectionCoefficient::kGreater;
  PropertyResult r =
      make_result(hooked ? "step_identity[greater-coeff hook]" : "step_identity", trials);
  const GeneratorConfig g = engine_config(cfg);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kStepStream, trial);
    // Tiny arrangements admit no overlaps at all, so redraw those too.
    ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, g);
    GroupExpression e(arr);
    std::vector<PairChoice> pairs;
    for (int attempt = 0; attempt < 1000 && pairs.empty(); ++attempt) {
      if (attempt % 20 == 19) arr = random_arrangement(pick_backend(rng), rng, g);
      e = canonicalize(random_expression(arr, rng, g));
      pairs = same_sign_pairs(e);
    }
    if (pairs.empty()) {
      note_failure(r, trial, "generator found no same-sign overlapping pair");
      continue;
    }
    const PairChoice pair = pairs[static_cast<std::size_t>(
        uniform(rng, 0, static_cast<std::int64_t>(pairs.size()) - 1))];

    bool ok = true;
    try {
      StepResult step = mv_step(e, pair, rule);
      ok = oracle_values(step.after) == oracle_values(e);
      if (ok && ledger) {
        ledger->record(RewriteTrace{e, {step.record}, step.after, Status::kLaminarNoOverlap});
      }
    } catch (const InvariantViolation&) {
      ok = false;
    }
    if (!ok) {
      auto fails = [rule](const GroupExpression& x) {
        return is_canonical(x) && failing_step(x, rule).has_value();
      };
      GroupExpression small = minimize_expression(e, fails);
      Json cex = instance_json(small);
      if (auto p = failing_step(small, rule)) {
        cex["pair"] = {set_to_json(small.terms()[p->heavy].set.cells()),
                       set_to_json(small.terms()[p->light].set.cells())};
      }
      note_failure(r, trial, "step changed the function", cex);
    }
  }
  return r;
}

PropertyResult check_constructive_injectivity(const SuiteConfig& cfg, std::size_t trials,
                                              StepLedger& ledger) {
  PropertyResult r = make_result("constructive_injectivity", trials);
  GeneratorConfig g = engine_config(cfg);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kInjectivityStream, trial);
    ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, g);
    g.mv_instances = static_cast<std::size_t>(uniform(rng, 1, 8));
    GroupExpression e = random_zero_expression(arr, rng, g);
    const Strategy s = kStrategies[trial % 3];
    try {
      RewriteTrace t = certify_zero(e, s, cfg.max_steps);
      ledger.record(t);
      if (auto err = find_trace_error(t)) {
        note_failure(r, trial, "certificate rejected: " + *err, instance_json(e));
      } else if (trial % 10 == 0 && !verify_trace(trace_from_json(trace_to_json(t)))) {
        note_failure(r, trial, "certificate rejected after JSON round trip", instance_json(e));
      }
    } catch (const StepBudgetExceeded& ex) {
      ledger.record(ex.trace());
      note_failure(r, trial, "StepBudgetExceeded after " + std::to_string(ex.trace().steps.size()) +
                                 " steps", instance_json(e));
    } catch (const Error& ex) {
      note_failure(r, trial, ex.what(), instance_json(e));
    }
  }
  return r;
}

PropertyResult check_normalize_end_state(const SuiteConfig& cfg, std::size_t trials,
                                         StepLedger& ledger) {
  PropertyResult r = make_result("normalize_end_state", trials);
  const GeneratorConfig g = engine_config(cfg);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kEndStateStream, trial);
    ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, g);
    GroupExpression e = random_expression(arr, rng, g);
    RewriteTrace t = normalize(e, kStrategies[trial % 3], cfg.max_steps);
    ledger.record(t);
    const auto before = oracle_values(e);
    std::string why;
    if (auto err = find_trace_error(t)) {
      why = "trace rejected: " + *err;
    } else if (oracle_values(t.final_expr) != before) {
      why = "function not preserved";
    } else if (t.status == Status::kLaminarNoOverlap) {
      auto w = laminar_witness(t.final_expr);
      if (!is_laminar(t.final_expr)) {
        why = "LaminarNoOverlap final is not laminar";
      } else if (!w || w->value == 0) {
        why = "laminar final without nonzero witness";
      }
    } else if (t.status == Status::kEmptyReached && !all_zero(before)) {
      why = "EmptyReached on a nonzero function";
    }
    if (!why.empty()) note_failure(r, trial, why, instance_json(e));
  }
  return r;
}

PropertyResult check_zero_laminar_fuzz(const SuiteConfig& cfg, std::size_t trials) {
  PropertyResult r = make_result("zero_laminar", trials);
  const GeneratorConfig g = default_config(cfg);
  GeneratorConfig small = engine_config(cfg);
  std::size_t witnesses = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kLaminarStream, trial);
    std::string why;
    if (trial % 2 == 0) {
      // A nonempty laminar expression always has a cell carrying its outer
      // coefficient, so its image cannot vanish.
      ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, g);
      GroupExpression e = random_laminar_expression(arr, rng, g);
      const auto values = oracle_values(e);
      if (all_zero(values)) {
        if (check_zero_laminar(e)) ++witnesses, why = "nonempty laminar expression with zero image";
      } else if (auto w = laminar_witness(e); !w) {
        why = "no witness for a nonzero laminar expression";
      } else if (w->value != e.terms()[w->outer].coeff || values[w->cell] != w->value) {
        why = "witness value does not match the outer coefficient";
      }
      if (!why.empty()) note_failure(r, trial, why, instance_json(e));
      continue;
    }
    // Laminar end states of zero expressions must be empty.
    ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, small);
    small.mv_instances = static_cast<std::size_t>(uniform(rng, 1, 3));
    GroupExpression e = random_zero_expression(arr, rng, small);
    RewriteTrace t = normalize(e, kStrategies[trial % 3], cfg.max_steps);
    if (t.status == Status::kEmptyReached || t.status == Status::kLaminarNoOverlap) {
      try {
        if (check_zero_laminar(t.final_expr)) {
          ++witnesses;
          why = "nonempty laminar end state with zero image";
        }
      } catch (const std::invalid_argument& ex) {
        why = ex.what();
      }
    }
    if (!why.empty()) note_failure(r, trial, why, instance_json(e));
  }
  if (r.failures == 0) r.note = std::to_string(witnesses) + " nonempty laminar forms with zero image";
  return r;
}

PropertyResult check_surjectivity(const SuiteConfig& cfg, Backend b, std::size_t trials) {
  PropertyResult r = make_result("surjectivity[" + to_string(b) + "]", trials);
  GeneratorConfig g = default_config(cfg);
  g.coeff_bound = 10;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kSurjectivityStream * 16 + static_cast<std::uint64_t>(b), trial);
    ArrangementPtr arr = random_arrangement(b, rng, g);
    ConstructibleFunction f = random_function(arr, rng, g);
    GroupExpression e = decompose(f);
    std::string why;
    if (oracle_values(e) != f.values()) {
      why = "decompose round trip differs";
    } else if (!is_canonical(e)) {
      why = "decompose output not canonical";
    } else {
      for (const Term& t : e.terms()) {
        if (!is_open(t.set.cells())) why = "decompose produced a non-open set";
      }
    }
    if (!why.empty()) {
      note_failure(r, trial, why,
                   Json{{"arrangement", arrangement_to_json(*arr)}, {"function", function_to_json(f)}});
    }
  }
  return r;
}

PropertyResult check_equality_soundness(const SuiteConfig& cfg, std::size_t trials,
                                        StepLedger& ledger) {
  PropertyResult r = make_result("equality_soundness", trials);
  GeneratorConfig g = engine_config(cfg);
  std::size_t equal_cases = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kEqualityStream, trial);
    ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, g);
    GroupExpression a = random_expression(arr, rng, g);
    GroupExpression b(arr);
    switch (trial % 3) {
      case 0: {
        g.mv_instances = static_cast<std::size_t>(uniform(rng, 1, 3));
        b = add(a, random_zero_expression(arr, rng, g));
        break;
      }
      case 1:
        b = random_expression(arr, rng, g);
        break;
      default:
        b = add(a, make_expression(arr, {Term{nonzero_coeff(rng, 2), random_open_set(arr, rng)}}));
        break;
    }
    const bool truth = oracle_values(a) == oracle_values(b);
    if (truth) ++equal_cases;

    std::string why;
    for (Strategy s : kStrategies) {
      try {
        EqualityVerdict v = equal_in_group(a, b, s, cfg.max_steps);
        if (v.equal != truth) {
          why = "verdict disagrees with the function oracle under " + to_string(s);
        } else if (v.equal && (!v.certificate || !verify_trace(*v.certificate))) {
          why = "invalid certificate under " + to_string(s);
        }
        if (v.certificate) ledger.record(*v.certificate);
      } catch (const Error& ex) {
        why = std::string(ex.what()) + " under " + to_string(s);
      }
      if (!why.empty()) break;
    }
    if (!why.empty()) {
      Json cex = instance_json(a);
      cex["other"] = expression_to_json(b);
      note_failure(r, trial, why, cex);
    }
  }
  if (r.failures == 0) r.note = std::to_string(equal_cases) + " equal pairs";
  return r;
}

PropertyResult check_homomorphism(const SuiteConfig& cfg, std::size_t trials) {
  PropertyResult r = make_result("alpha_homomorphism", trials);
  const GeneratorConfig g = default_config(cfg);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kHomomorphismStream, trial);
    ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, g);
    GroupExpression a = random_expression(arr, rng, g);
    GroupExpression b = random_expression(arr, rng, g);
    const bool ok = alpha(add(a, b)) == add(alpha(a), alpha(b)) &&
                    alpha(subtract(a, b)) == add(alpha(a), negate(alpha(b))) &&
                    alpha(a).values() == oracle_values(a);
    if (!ok) note_failure(r, trial, "alpha is not additive", instance_json(a));
  }
  return r;
}

PropertyResult check_canonicalize(const SuiteConfig& cfg, std::size_t trials) {
  PropertyResult r = make_result("canonicalize", trials);
  const GeneratorConfig g = default_config(cfg);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kCanonicalizeStream, trial);
    ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, g);
    GroupExpression e = random_expression(arr, rng, g);
    GroupExpression c = canonicalize(e);
    std::string why;
    if (oracle_values(c) != oracle_values(e)) {
      why = "canonicalize changed the function";
    } else if (!is_canonical(c)) {
      why = "canonical form invariants fail";
    } else if (!(canonicalize(c) == c)) {
      why = "canonicalize is not idempotent";
    } else if (stats(c).weight != oracle_weight(c) || stats(e).weight != oracle_weight(e)) {
      why = "weight statistic disagrees with per-cell sum";
    }
    if (!why.empty()) note_failure(r, trial, why, instance_json(e));
  }
  return r;
}

PropertyResult check_geometry_laws(const SuiteConfig& cfg, std::size_t trials) {
  PropertyResult r = make_result("geometry_laws", trials);
  const GeneratorConfig g = default_config(cfg);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(cfg.seed, kGeometryStream, trial);
    ArrangementPtr arr = random_arrangement(pick_backend(rng), rng, g);
    OpenSet u = random_open_set(arr, rng);
    OpenSet v = random_open_set(arr, rng);
    const OpenSet joined = unite(u, v);
    const OpenSet met = intersect(u, v);
    std::string why;
    if (!is_open(joined.cells()) || !is_open(met.cells())) {
      why = "union or intersection not open";
    } else if (measure(u) + measure(v) != measure(joined) + measure(met)) {
      why = "measure is not modular";
    } else if (overlaps(u, v) != overlaps(v, u) || overlaps(u, u)) {
      why = "overlap relation is not symmetric and irreflexive";
    } else if (boundary(u).bits().intersects(u.bits())) {
      why = "boundary meets the open set";
    } else {
      CellBits rebuilt(arr->size());
      std::size_t total = 0;
      const auto parts = connected_components(u);
      for (const OpenSet& p : parts) {
        if (!is_open(p.cells()) || connected_components(p).size() != 1) {
          why = "component is not an open connected set";
        }
        rebuilt |= p.bits();
        total += p.size();
      }
      if (rebuilt != u.bits() || total != u.size()) why = "components do not partition the set";
      if (is_connected(u) != (parts.size() == 1)) why = "connectedness disagrees with components";
    }
    if (!why.empty()) {
      GroupExpression pair = make_expression(arr, {Term{1, u}, Term{2, v}});
      note_failure(r, trial, why, instance_json(pair));
    }
  }
  return r;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  SuiteReport report{cfg, {}, {}};
  const std::size_t heavy = cfg.trials;
  const std::size_t light = std::max<std::size_t>(1, cfg.trials / 10);
  auto& props = report.properties;
  for (Backend b : kAllBackends) props.push_back(check_mv_kernel(cfg, b, heavy));
  props.push_back(check_geometry_laws(cfg, light));
  props.push_back(check_homomorphism(cfg, light));
  props.push_back(check_canonicalize(cfg, light));
  for (Backend b : kAllBackends) props.push_back(check_surjectivity(cfg, b, light));
  props.push_back(check_step_identity(cfg, heavy,
                                      cfg.bug_hook ? IntersectionCoefficient::kGreater
                                                   : IntersectionCoefficient::kLesser,
                                      &report.ledger));
  props.push_back(check_constructive_injectivity(cfg, heavy, report.ledger));
  props.push_back(check_normalize_end_state(cfg, light, report.ledger));
  props.push_back(check_zero_laminar_fuzz(cfg, heavy));
  props.push_back(check_equality_soundness(cfg, light, report.ledger));
  return report;
}

// ---------------------------------------------------------------------------
// Reporting

Json report_to_json(const SuiteReport& r) {
  Json props = Json::array();
  for (const PropertyResult& p : r.properties) {
    Json entry = {{"name", p.name}, {"trials", p.trials}, {"failures", p.failures}};
    if (p.first_failure) entry["first_failure"] = *p.first_failure;
    if (p.counterexample) entry["counterexample"] = *p.counterexample;
    if (!p.note.empty()) entry["note"] = p.note;
    props.push_back(std::move(entry));
  }
  return {{"config",
           {{"seed", r.config.seed},
            {"trials", r.config.trials},
            {"max_steps", r.config.max_steps},
            {"bug_hook", r.config.bug_hook}}},
          {"properties", props},
          {"steps",
           {{"recorded", r.ledger.steps},
            {"weight_violations", r.ledger.weight_violations},
            {"max_coeff_increases", r.ledger.max_coeff_increases}}},
          {"failures", r.failures()},
          {"passed", r.passed()}};
}

std::string report_to_text(const SuiteReport& r) {
  std::ostringstream out;
  out << "seed " << r.config.seed << ", " << r.config.trials << " trials"
      << (r.config.bug_hook ? ", bug hook enabled" : "") << "\n";
  for (const PropertyResult& p : r.properties) {
    out << (p.failures == 0 ? "PASS " : "FAIL ") << p.name << ": " << p.trials << " trials, "
        << p.failures << " failures";
    if (p.first_failure) out << " (first at trial " << *p.first_failure << ")";
    if (!p.note.empty()) out << " - " << p.note;
    out << "\n";
    if (p.counterexample) out << "  counterexample: " << p.counterexample->dump() << "\n";
  }
  out << (r.ledger.weight_violations == 0 ? "PASS " : "FAIL ") << "weight_law: "
      << r.ledger.steps << " steps, " << r.ledger.weight_violations << " violations\n";
  out << "INFO max_coeff_increases: " << r.ledger.max_coeff_increases << " of " << r.ledger.steps
      << " steps\n";
  out << (r.passed() ? "suite passed" : "suite FAILED") << " (" << r.failures()
      << " failures)\n";
  return out.str();
}

}  // namespace cf::testkit
