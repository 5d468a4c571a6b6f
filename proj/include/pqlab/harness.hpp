// Experiment configuration, the suite runner and report emission.
//
// The config is an INI file. [run] holds the lambda range, the corpus seed and the
// output paths, [budget] the enumeration caps, and one section per suite holds
// its selections. Unknown sections or keys are rejected.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pqlab/core.hpp"
#include "pqlab/report.hpp"

namespace pqlab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Overrides the budget caps: either one integer applied to all three, or
// comma-separated key=value pairs over max_seed_space, max_program_len, max_steps.
inline constexpr const char* kBudgetEnv = "PQLAB_BUDGET";

struct ExperimentConfig {
  std::vector<int> lambdas{2, 3};
  std::uint64_t rng_seed = 20240601;
  std::string out = "reports/suite.json";
  std::string csv;
  Limits budget;
  // section -> key -> raw value, for the suite selections.
  std::map<std::string, std::map<std::string, std::string>> sections;

  // Selection helpers; fall back to `def` when the key is absent.
  std::vector<std::string> list(const std::string& section, const std::string& key,
                                const std::vector<std::string>& def) const;
  std::vector<int> ints(const std::string& section, const std::string& key, const std::vector<int>& def) const;
  std::vector<Rational> rationals(const std::string& section, const std::string& key,
                                  const std::vector<Rational>& def) const;
  // The suite's own lambdas, else the [run] range.
  std::vector<int> suite_lambdas(const std::string& section) const;
  bool enabled(const std::string& section) const;
};

ExperimentConfig default_config();
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& ini_text);
// Throws ConfigError on empty lambda ranges, non-positive budgets, unknown ids.
void validate(const ExperimentConfig& config);
// Applies kBudgetEnv if set. Zero caps are allowed here: every enumeration then
// raises BudgetExceeded, which the suite records per report.
void apply_budget_env(ExperimentConfig& config);

Rational parse_rational(const std::string& s);

// A report whose tag and inputs are known before it runs, so that a budget
// failure can still be attributed.
struct SuiteJob {
  std::string lemma_tag;
  std::map<std::string, std::string> inputs;
  std::function<GameReport()> run;
};

std::vector<SuiteJob> suite_jobs(const ExperimentConfig& config);
// Runs every job in declaration order under the configured caps. BudgetExceeded
// and any other error are recorded on the report; the suite continues.
std::vector<GameReport> run_suite(const ExperimentConfig& config);
GameReport run_job(const SuiteJob& job);

// Sets limits() for the lifetime of the guard.
class LimitsGuard {
 public:
  explicit LimitsGuard(const Limits& l) : saved_(limits()) { limits() = l; }
  ~LimitsGuard() { limits() = saved_; }
  LimitsGuard(const LimitsGuard&) = delete;
  LimitsGuard& operator=(const LimitsGuard&) = delete;

 private:
  Limits saved_;
};

// Canonical serialization: sorted keys, rationals as "num/den", intervals as
// [lo, hi] decimal strings, two-space indentation, trailing newline.
std::string reports_to_json(const std::vector<GameReport>& reports);
std::string report_to_json(const GameReport& report);
std::vector<GameReport> reports_from_json(const std::string& text);
// One row per check; reports without checks get one row carrying the error.
std::string reports_to_csv(const std::vector<GameReport>& reports);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

bool all_pass(const std::vector<GameReport>& reports);

}  // namespace pqlab
