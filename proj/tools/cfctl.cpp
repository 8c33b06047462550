// cfctl: evaluate, decompose, normalize and compare expressions over a cell
// arrangement scene, replay certificates, and run the property suite.
//
// Exit codes: 0 success, 1 negative verdict or suite failure, 2 bad input,
// 3 step budget exhausted, 4 no same-sign overlapping pair, 5 internal error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cf/scene.hpp"
#include "cf/testkit.hpp"

namespace {

constexpr int kBadInput = 2;
constexpr int kBudgetExceeded = 3;
constexpr int kNoSameSignPair = 4;
constexpr int kInternalError = 5;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw cf::FormatError("cannot write " + path);
  out << text;
}

std::string plural(std::size_t n, const char* word) {
  return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

int run_eval(const std::string& scene_path, const std::string& expr) {
  const cf::Scene scene = cf::load_scene_file(scene_path);
  std::cout << cf::dump(cf::function_to_json(cf::alpha(scene.expr(expr))));
  return 0;
}

int run_normalize(const std::string& scene_path, const std::string& expr, cf::Strategy strategy,
                  std::size_t max_steps, const std::string& trace_path) {
  const cf::Scene scene = cf::load_scene_file(scene_path);
  const cf::RewriteTrace trace = cf::normalize(scene.expr(expr), strategy, max_steps);
  const cf::ExprStats final_stats = cf::stats(trace.final_expr);
  std::cout << cf::to_string(trace.status) << ", " << plural(trace.steps.size(), "step") << "\n"
            << "final weight " << cf::format_rational(final_stats.weight) << ", max coefficient "
            << final_stats.max_coeff << ", " << plural(final_stats.term_count, "term") << "\n";
  if (!trace_path.empty()) write_file(trace_path, cf::dump(cf::trace_to_json(trace)));
  switch (trace.status) {
    case cf::Status::kStepBudgetExceeded: return kBudgetExceeded;
    case cf::Status::kNoSameSignPair: return kNoSameSignPair;
    default: return 0;
  }
}

int run_equal(const std::string& scene_path, const std::string& lhs, const std::string& rhs,
              cf::Strategy strategy, std::size_t max_steps, const std::string& trace_path) {
  const cf::Scene scene = cf::load_scene_file(scene_path);
  const cf::GroupExpression& a = scene.expr(lhs);
  const cf::GroupExpression& b = scene.expr(rhs);
  try {
    const cf::EqualityVerdict verdict = cf::equal_in_group(a, b, strategy, max_steps);
    if (!verdict.equal) {
      std::cout << "NOT-EQUAL\n";
      return 1;
    }
    std::cout << "EQUAL, certificate of " << plural(verdict.certificate->steps.size(), "step");
    if (!trace_path.empty()) {
      write_file(trace_path, cf::dump(cf::trace_to_json(*verdict.certificate)));
      std::cout << " written to " << trace_path;
    }
    std::cout << "\n";
    return 0;
  } catch (const cf::StepBudgetExceeded& e) {
    std::cerr << "cfctl: " << e.what() << "\n";
    if (!trace_path.empty()) write_file(trace_path, cf::dump(cf::trace_to_json(e.trace())));
    return kBudgetExceeded;
  }
}

int run_decompose(const std::string& scene_path, const std::string& func) {
  const cf::Scene scene = cf::load_scene_file(scene_path);
  const cf::ConstructibleFunction& f = scene.func(func);
  const cf::GroupExpression e = cf::decompose(f);
  if (!cf::equals(cf::alpha(e), f)) {
    std::cerr << "cfctl: decomposition does not reproduce the function\n";
    return kInternalError;
  }
  std::cout << cf::dump(cf::expression_to_json(e));
  return 0;
}

int run_verify(const std::string& trace_path) {
  const cf::RewriteTrace trace = cf::trace_from_json(cf::read_json_file(trace_path));
  if (auto err = cf::find_trace_error(trace)) {
    std::cout << "INVALID: " << *err << "\n";
    return 1;
  }
  std::cout << "VALID: " << plural(trace.steps.size(), "step") << ", " << cf::to_string(trace.status)
            << "\n";
  return 0;
}

int run_suite(const cf::testkit::SuiteConfig& cfg, const std::string& report_path) {
  const cf::testkit::SuiteReport report = cf::testkit::run_suite(cfg);
  std::cout << cf::testkit::report_to_text(report);
  if (!report_path.empty()) write_file(report_path, cf::dump(cf::testkit::report_to_json(report)));
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-set expressions, constructible functions and Mayer-Vietoris certificates"};
  app.require_subcommand(1);

  std::string scene_path, expr_name, other_name, func_name, trace_path, report_path;
  std::string strategy_name = "first";
  std::size_t max_steps = cf::kDefaultMaxSteps;
  std::uint64_t seed = 0;
  cf::testkit::SuiteConfig suite_cfg;

  auto add_engine_flags = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", strategy_name, "Pair selection strategy")
        ->check(CLI::IsMember({"first", "max-cancel", "min-intersection"}));
    cmd->add_option("--max-steps", max_steps, "Rewrite step budget");
    cmd->add_option("--trace", trace_path, "Write the rewrite trace to this path");
  };

  auto* eval = app.add_subcommand("eval", "Print the function of an expression");
  eval->add_option("scene", scene_path)->required();
  eval->add_option("expr", expr_name)->required();

  auto* norm = app.add_subcommand("normalize", "Rewrite an expression to a laminar form");
  norm->add_option("scene", scene_path)->required();
  norm->add_option("expr", expr_name)->required();
  add_engine_flags(norm);
  norm->add_option("--seed", seed, "Accepted for scripting symmetry; rewriting is deterministic");

  auto* equal = app.add_subcommand("equal", "Decide equality of two expressions");
  equal->add_option("scene", scene_path)->required();
  equal->add_option("lhs", expr_name)->required();
  equal->add_option("rhs", other_name)->required();
  add_engine_flags(equal);

  auto* decomp = app.add_subcommand("decompose", "Write a function as an expression");
  decomp->add_option("scene", scene_path)->required();
  decomp->add_option("func", func_name)->required();

  auto* verify = app.add_subcommand("verify", "Replay a rewrite trace");
  verify->add_option("trace", trace_path)->required();

  auto* suite = app.add_subcommand("suite", "Run the randomized property suite");
  suite->add_option("--seed", suite_cfg.seed, "Base seed");
  suite->add_option("--trials", suite_cfg.trials, "Trials for the heavy properties");
  suite->add_option("--max-steps", suite_cfg.max_steps, "Rewrite step budget");
  suite->add_option("--report", report_path, "Write the JSON report to this path");
  suite->add_flag("--bug-hook", suite_cfg.bug_hook,
                  "Use the wrong intersection coefficient in the step identity check");

  CLI11_PARSE(app, argc, argv);

  try {
    const cf::Strategy strategy = cf::parse_strategy(strategy_name);
    if (*eval) return run_eval(scene_path, expr_name);
    if (*norm) return run_normalize(scene_path, expr_name, strategy, max_steps, trace_path);
    if (*equal) return run_equal(scene_path, expr_name, other_name, strategy, max_steps, trace_path);
    if (*decomp) return run_decompose(scene_path, func_name);
    if (*verify) return run_verify(trace_path);
    if (*suite) return run_suite(suite_cfg, report_path);
  } catch (const cf::UnknownName& e) {
    std::cerr << "cfctl: " << e.what() << "\n";
    return kBadInput;
  } catch (const cf::FormatError& e) {
    std::cerr << "cfctl: " << e.what() << "\n";
    return kBadInput;
  } catch (const cf::NotOpen& e) {
    std::cerr << "cfctl: " << e.what() << "\n";
    return kBadInput;
  } catch (const cf::ArrangementMismatch& e) {
    std::cerr << "cfctl: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "cfctl: internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return 0;
}
