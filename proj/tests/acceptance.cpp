// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cf/testkit.hpp"

namespace fs = std::filesystem;
using namespace cf;
using namespace cf::testkit;

namespace {

constexpr std::size_t kHeavyTrials = 10000;
constexpr std::size_t kLightTrials = 1000;

struct Criterion {
  std::string name;
  bool pass;
  std::string detail;
};

std::vector<Criterion> results;

void report(const std::string& name, bool pass, const std::string& detail) {
  results.push_back({name, pass, detail});
  std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << s << " s";
  return out.str();
}

std::string summary(const std::vector<PropertyResult>& props) {
  std::ostringstream out;
  for (std::size_t i = 0; i < props.size(); ++i) {
    const PropertyResult& p = props[i];
    if (i) out << "; ";
    out << p.name << " " << p.failures << "/" << p.trials << " failed";
    if (p.failures) out << " (" << p.note << ")";
  }
  return out.str();
}

bool all_clean(const std::vector<PropertyResult>& props) {
  for (const PropertyResult& p : props) {
    if (p.failures) return false;
  }
  return true;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli_suite(const fs::path& report_path) {
  const std::string cmd = std::string(CFCTL_PATH) + " suite --seed 0 --report " + report_path.string() +
                          " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

int main() {
  SuiteConfig cfg;
  StepLedger ledger;

  {
    const auto start = std::chrono::steady_clock::now();
    std::vector<PropertyResult> props;
    for (Backend b : kAllBackends) props.push_back(check_mv_kernel(cfg, b, kHeavyTrials));
    const double t = seconds_since(start);
    report("mv_kernel_exactness", all_clean(props) && t < 10.0,
           summary(props) + "; " + fmt_seconds(t) + " (budget 10 s)");
  }

  {
    PropertyResult honest = check_step_identity(cfg, kHeavyTrials, IntersectionCoefficient::kLesser, &ledger);
    PropertyResult hooked = check_step_identity(cfg, 100, IntersectionCoefficient::kGreater);
    const bool caught = hooked.first_failure && *hooked.first_failure < 100 && hooked.counterexample;
    std::string detail = summary({honest});
    detail += caught ? "; bug hook caught at trial " + std::to_string(*hooked.first_failure)
                     : "; bug hook NOT caught within 100 trials";
    report("step_identity", honest.failures == 0 && caught, detail);
  }

  {
    const auto start = std::chrono::steady_clock::now();
    PropertyResult p = check_constructive_injectivity(cfg, kHeavyTrials, ledger);
    const double t = seconds_since(start);
    report("constructive_injectivity", p.failures == 0 && t < 60.0,
           summary({p}) + "; " + fmt_seconds(t) + " (budget 60 s)");
  }

  {
    std::vector<PropertyResult> props{check_normalize_end_state(cfg, kLightTrials, ledger),
                                      check_zero_laminar_fuzz(cfg, kHeavyTrials)};
    report("laminar_end_state", all_clean(props), summary(props) + "; " + props[1].note);
  }

  {
    std::vector<PropertyResult> props;
    for (Backend b : kAllBackends) props.push_back(check_surjectivity(cfg, b, kLightTrials));
    report("surjectivity_round_trip", all_clean(props), summary(props));
  }

  {
    PropertyResult p = check_equality_soundness(cfg, kLightTrials, ledger);
    report("equality_soundness", p.failures == 0, summary({p}) + "; " + p.note);
  }

  // Two full default runs of the command-line suite supply the remaining criteria.
  const fs::path dir = fs::temp_directory_path() / "cf_acceptance";
  fs::create_directories(dir);
  const fs::path first = dir / "report_a.json", second = dir / "report_b.json";
  const int code_a = run_cli_suite(first);
  const int code_b = run_cli_suite(second);
  const std::string text_a = read_file(first), text_b = read_file(second);
  Json cli;
  try {
    cli = Json::parse(text_a);
  } catch (const Json::exception&) {
    cli = Json::object();
  }

  {
    const std::size_t cli_steps = cli.value("/steps/recorded"_json_pointer, std::size_t{0});
    const std::size_t cli_violations =
        cli.value("/steps/weight_violations"_json_pointer, std::size_t{1});
    const std::size_t steps = ledger.steps + cli_steps;
    const std::size_t violations = ledger.weight_violations + cli_violations;
    report("weight_law", violations == 0 && steps > 0,
           std::to_string(violations) + " violations over " + std::to_string(steps) + " recorded steps");
  }

  {
    const bool present = cli.contains("steps") && cli["steps"].contains("max_coeff_increases");
    std::string detail = "report missing";
    if (present) {
      detail = std::to_string(cli["steps"]["max_coeff_increases"].get<std::size_t>()) + " of " +
               std::to_string(cli["steps"]["recorded"].get<std::size_t>()) +
               " suite steps raised max|a| (informational); in-process ledger: " +
               std::to_string(ledger.max_coeff_increases) + " of " + std::to_string(ledger.steps);
    }
    report("max_coeff_report", present, detail);
  }

  {
    const bool identical = !text_a.empty() && text_a == text_b;
    report("determinism", identical && code_a == 0 && code_b == 0,
           std::string(identical ? "reports byte-identical" : "reports differ") + " (" +
               std::to_string(text_a.size()) + " bytes); exit codes " + std::to_string(code_a) + ", " +
               std::to_string(code_b));
  }
  fs::remove_all(dir);

  std::size_t failed = 0;
  for (const Criterion& c : results) failed += c.pass ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
