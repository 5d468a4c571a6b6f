#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>

#include "json.hpp"
#include "pqlab/harness.hpp"

using namespace pqlab;

namespace {

// A small experiment that still touches every suite.
const char* kSmall = R"(
[run]
lambdas = 2
[kraft]
max_x_len = 3
program_len = 8
[shannon_fano]
count = 4
[advantage]
samplers = uniform1, maj3
lambdas = 2
n = 2
k = 1
[advantage_shift]
samplers = uniform1
[soundness]
samplers = maj3
[solver_sampler]
samplers = maj3
[good_set]
samplers = skew2
[transcript_attack]
protocols = echo1
[puzzle_attack]
puzzles = coin
[intqas]
bases = rej11
[zk]
bases = rej11
commits = identity, partial
[appendix]
functions = parity
adversaries = canonical
)";

bool keys_sorted(const nlohmann::ordered_json& j) {
  if (j.is_array()) {
    for (const auto& e : j)
      if (!keys_sorted(e)) return false;
    return true;
  }
  if (!j.is_object()) return true;
  std::string prev;
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    if (!first && !(prev < k)) return false;
    first = false;
    prev = k;
    if (!keys_sorted(v)) return false;
  }
  return true;
}

struct EnvGuard {
  explicit EnvGuard(const char* value) { setenv(kBudgetEnv, value, 1); }
  ~EnvGuard() { unsetenv(kBudgetEnv); }
};

}  // namespace

TEST_CASE("config parsing") {
  ExperimentConfig c = parse_config("[run]\nlambdas = 2-4, 6\n[advantage]\nk = 1-2\n");
  CHECK(c.lambdas == std::vector<int>{2, 3, 4, 6});
  CHECK(c.ints("advantage", "k", {}) == std::vector<int>{1, 2});
  CHECK(c.ints("advantage", "n", {7}) == std::vector<int>{7});
  CHECK(c.suite_lambdas("zk") == c.lambdas);
  CHECK(c.enabled("zk"));
  CHECK_FALSE(parse_config("[zk]\nenabled = false\n").enabled("zk"));
  CHECK(parse_config("[good_set]\np = 1/6, 1\n").rationals("good_set", "p", {}) ==
        std::vector<Rational>{Rational(1, 6), Rational(1)});
  CHECK(parse_config("").lambdas == default_config().lambdas);
  CHECK_THROWS_AS(parse_config("[nope]\na = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nlambda = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nlambdas = 4-2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nlambdas = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\nlambdas = x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[budget]\nmax_steps = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[advantage]\nsamplers = nosuch\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[zk]\ncheaters = nosuch\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[composition]\npairs = always\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[appendix]\nuniversal = literal\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[good_set]\np = half\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/pqlab.ini"), ConfigError);
  CHECK(parse_rational(" 2/4 ") == Rational(1, 2));
}

TEST_CASE("budget override from the environment") {
  ExperimentConfig c = default_config();
  {
    EnvGuard env("5");
    apply_budget_env(c);
  }
  CHECK(c.budget.max_seed_space == 5);
  CHECK(c.budget.max_program_len == 5);
  CHECK(c.budget.max_steps == 5);
  {
    EnvGuard env("max_steps=7, max_program_len=9");
    apply_budget_env(c);
  }
  CHECK(c.budget.max_steps == 7);
  CHECK(c.budget.max_program_len == 9);
  CHECK(c.budget.max_seed_space == 5);
  {
    EnvGuard env("bogus=1");
    CHECK_THROWS_AS(apply_budget_env(c), ConfigError);
  }
  {
    EnvGuard env("-1");
    CHECK_THROWS_AS(apply_budget_env(c), ConfigError);
  }
  ExperimentConfig d = default_config();
  apply_budget_env(d);
  CHECK(d.budget.max_steps == default_config().budget.max_steps);
}

TEST_CASE("empty emission") {
  CHECK(reports_to_json({}) == "[]\n");
  CHECK(reports_to_csv({}) == "report,lemma_tag,description,left,relation,right,pass,error\n");
  CHECK(reports_from_json("[]\n").empty());
  CHECK(all_pass({}));
}

TEST_CASE("check recomputation") {
  GameReport r;
  CHECK(r.check("exact", Rational(1, 3), "<=", Rational(1, 2)));
  CHECK_FALSE(r.check("strict", Rational(1, 2), "<", Rational(1, 2)));
  CHECK(r.check("flag", true));
  CHECK(r.check("interval", Interval::point(0.25L), "<=~", Interval::point(0.5L)));
  for (const auto& c : r.checks) CHECK(recompute_pass(c) == c.pass);
  Check forged = r.checks[1];
  forged.pass = true;
  CHECK_FALSE(recompute_pass(forged));
  CHECK_FALSE(r.all_pass());
}

TEST_CASE("jobs record their failures") {
  SuiteJob boom{"tag", {{"x", "1"}}, [] () -> GameReport { throw std::runtime_error("boom"); }};
  GameReport r = run_job(boom);
  CHECK(r.lemma_tag == "tag");
  CHECK(r.inputs.at("x") == "1");
  CHECK(*r.error == "error: boom");
  CHECK_FALSE(r.all_pass());
  SuiteJob cap{"tag", {}, [] () -> GameReport {
                 check_seed_space(3, 4);
                 return {};
               }};
  CHECK(run_job(cap).error->rfind("BudgetExceeded: ", 0) == 0);
}

TEST_CASE("suite output is canonical and reproducible") {
  ExperimentConfig c = parse_config(kSmall);
  auto jobs = suite_jobs(c);
  auto reports = run_suite(c);
  REQUIRE(reports.size() == jobs.size());
  std::set<std::string> tags;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    CHECK(reports[i].lemma_tag == jobs[i].lemma_tag);
    tags.insert(reports[i].lemma_tag);
    CAPTURE(reports[i].lemma_tag);
    CHECK_FALSE(reports[i].error);
    CHECK(reports[i].all_pass());
  }
  CHECK(tags.size() >= 20);
  std::string json = reports_to_json(reports);
  CHECK(json.back() == '\n');
  CHECK(keys_sorted(nlohmann::ordered_json::parse(json)));
  CHECK(json == reports_to_json(run_suite(c)));
  auto back = reports_from_json(json);
  CHECK(reports_to_json(back) == json);
  REQUIRE(back.size() == reports.size());
  for (const auto& r : back)
    for (const auto& ch : r.checks) CHECK(recompute_pass(ch) == ch.pass);
  std::size_t rows = 0;
  for (const auto& r : reports) rows += r.checks.empty() ? 1 : r.checks.size();
  std::string csv = reports_to_csv(reports);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) >= rows + 1);
}

TEST_CASE("a zero budget fails every report") {
  ExperimentConfig c = parse_config(kSmall);
  c.budget = Limits{0, 0, 0};
  auto reports = run_suite(c);
  REQUIRE_FALSE(reports.empty());
  for (const auto& r : reports) {
    CAPTURE(r.lemma_tag);
    REQUIRE(r.error);
    CHECK(r.error->rfind("BudgetExceeded", 0) == 0);
  }
  CHECK_FALSE(all_pass(reports));
  // The caps are restored afterwards.
  CHECK(limits().max_steps == Limits{}.max_steps);
}

TEST_CASE("the shipped config matches the built-in defaults") {
  ExperimentConfig file = load_config(std::string(PQLAB_SOURCE_DIR) + "/config/default.ini");
  ExperimentConfig def = default_config();
  CHECK(file.lambdas == def.lambdas);
  CHECK(file.rng_seed == def.rng_seed);
  CHECK(file.budget.max_seed_space == def.budget.max_seed_space);
  CHECK(file.budget.max_program_len == def.budget.max_program_len);
  CHECK(file.budget.max_steps == def.budget.max_steps);
  auto a = suite_jobs(file), b = suite_jobs(def);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lemma_tag == b[i].lemma_tag);
    CHECK(a[i].inputs == b[i].inputs);
  }
}
