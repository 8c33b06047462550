#pragma once

// Random instance generators and the property suite that checks the library
// against brute-force per-cell oracles.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cf/engine.hpp"
#include "cf/serialize.hpp"

namespace cf::testkit {

using Rng = std::mt19937_64;

/// Independent stream per (seed, property, trial).
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi);
/// Uniform in [-bound, bound] without zero; bound must be positive.
std::int64_t nonzero_coeff(Rng& rng, std::int64_t bound);

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t max_breakpoints = 64;
  std::size_t max_grid_side = 16;
  std::size_t max_terms = 6;
  std::int64_t coeff_bound = 5;
  std::size_t mv_instances = 8;
};

enum class Backend { kSegment, kCircle, kGrid };
inline constexpr Backend kAllBackends[] = {Backend::kSegment, Backend::kCircle, Backend::kGrid};
std::string to_string(Backend b);

/// Random arrangement of the given kind within the config's size bounds;
/// about half get random rational weights.
ArrangementPtr random_arrangement(Backend b, Rng& rng, const GeneratorConfig& cfg);

/// Nonempty open set: the up-closure of one to three random patches
/// (index windows on 1-D arrangements, rectangles of cells on grids).
OpenSet random_open_set(const ArrangementPtr& arr, Rng& rng);

/// Random expression with 1..max_terms terms and nonzero coefficients.
GroupExpression random_expression(const ArrangementPtr& arr, Rng& rng, const GeneratorConfig& cfg);

/// Canonical sum of cfg.mv_instances scaled relation instances
/// c * (U + V - U∪V - U∩V). Its image is checked to be zero.
GroupExpression random_zero_expression(const ArrangementPtr& arr, Rng& rng,
                                       const GeneratorConfig& cfg);

/// Canonical laminar expression with 1..max_terms terms.
GroupExpression random_laminar_expression(const ArrangementPtr& arr, Rng& rng,
                                          const GeneratorConfig& cfg);

ConstructibleFunction random_function(const ArrangementPtr& arr, Rng& rng,
                                      const GeneratorConfig& cfg);

/// Greedy shrinking: drops whole terms, then single cells (keeping every set
/// open and nonempty), as long as `still_fails` holds. The input must fail.
GroupExpression minimize_expression(const GroupExpression& e,
                                    const std::function<bool(const GroupExpression&)>& still_fails);

struct SuiteConfig {
  std::uint64_t seed = 0;
  /// Trial count for the heavy properties; light ones run trials / 10.
  std::size_t trials = 10000;
  std::size_t max_steps = kDefaultMaxSteps;
  /// Runs the step identity with the wrong intersection coefficient.
  bool bug_hook = false;
};

struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Trial index of the first failure, if any.
  std::optional<std::size_t> first_failure;
  std::optional<Json> counterexample;
  std::string note;
};

/// Aggregate over every rewrite step executed by the suite.
struct StepLedger {
  std::size_t steps = 0;
  std::size_t weight_violations = 0;
  std::size_t max_coeff_increases = 0;

  void record(const RewriteTrace& t);
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<PropertyResult> properties;
  StepLedger ledger;

  std::size_t failures() const;
  bool passed() const { return failures() == 0; }
};

// Individual properties, exposed so the acceptance suite can run them with
// its own budgets.
PropertyResult check_mv_kernel(const SuiteConfig& cfg, Backend b, std::size_t trials);
PropertyResult check_step_identity(const SuiteConfig& cfg, std::size_t trials,
                                   IntersectionCoefficient rule, StepLedger* ledger = nullptr);
PropertyResult check_constructive_injectivity(const SuiteConfig& cfg, std::size_t trials,
                                              StepLedger& ledger);
PropertyResult check_normalize_end_state(const SuiteConfig& cfg, std::size_t trials,
                                         StepLedger& ledger);
PropertyResult check_zero_laminar_fuzz(const SuiteConfig& cfg, std::size_t trials);
PropertyResult check_surjectivity(const SuiteConfig& cfg, Backend b, std::size_t trials);
PropertyResult check_equality_soundness(const SuiteConfig& cfg, std::size_t trials,
                                        StepLedger& ledger);
PropertyResult check_homomorphism(const SuiteConfig& cfg, std::size_t trials);
PropertyResult check_canonicalize(const SuiteConfig& cfg, std::size_t trials);
PropertyResult check_geometry_laws(const SuiteConfig& cfg, std::size_t trials);

SuiteReport run_suite(const SuiteConfig& cfg);

Json report_to_json(const SuiteReport& r);
std::string report_to_text(const SuiteReport& r);

}  // namespace cf::testkit
