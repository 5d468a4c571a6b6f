// Acceptance gate: runs the suite once, grades criteria 1-12 from its reports,
// then reruns it to byte-compare the emitted files for criterion 13.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "pqlab/corpus.hpp"
#include "pqlab/harness.hpp"

using namespace pqlab;

namespace {

// Pinned limits. Every comparison inside the reports is exact except the
// Pinsker legs, which use the interval slack fixed in interval.hpp.
constexpr double kKraftSeconds = 60.0;
constexpr double kTotalSeconds = 600.0;
constexpr std::size_t kMinIncompressibilityLaws = 20;
constexpr std::size_t kMaxIncompressibilityBits = 5;
constexpr std::size_t kShannonFanoLaws = 50;
constexpr std::size_t kMaxShannonFanoSupport = 32;
constexpr std::size_t kMinSoundnessPairs = 10;
constexpr std::size_t kMinGoodSetTriples = 20;
constexpr std::size_t kMinUniversalConfigs = 3;

struct Run {
  std::vector<GameReport> reports;
  std::map<std::string, double> seconds;
};

Run run_timed(const ExperimentConfig& config) {
  Run out;
  LimitsGuard guard(config.budget);
  for (const auto& job : suite_jobs(config)) {
    auto t0 = std::chrono::steady_clock::now();
    out.reports.push_back(run_job(job));
    out.seconds[job.lemma_tag] += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return out;
}

struct Grade {
  bool pass = true;
  std::string detail;
  void need(bool cond, const std::string& why) {
    if (!cond && pass) {
      pass = false;
      detail = why;
    }
  }
};

class Book {
 public:
  explicit Book(const std::vector<GameReport>& reports) {
    for (const auto& r : reports) by_tag_[r.lemma_tag].push_back(&r);
  }

  const std::vector<const GameReport*>& tag(const std::string& t) const {
    static const std::vector<const GameReport*> none;
    auto it = by_tag_.find(t);
    return it == by_tag_.end() ? none : it->second;
  }

  // Non-empty, error-free, every check passes and recomputes from its record.
  void all_sound(Grade& g, const std::string& t) const {
    const auto& rs = tag(t);
    g.need(!rs.empty(), "no " + t + " reports");
    for (const auto* r : rs) {
      g.need(!r->error, t + ": " + r->error.value_or(""));
      g.need(!r->checks.empty(), t + ": report without checks");
      for (const auto& c : r->checks) {
        g.need(c.pass, t + ": failed check '" + c.description + "'");
        g.need(recompute_pass(c) == c.pass, t + ": pass flag does not recompute for '" + c.description + "'");
      }
    }
  }

  std::set<std::string> distinct(const std::string& t, std::initializer_list<const char*> keys) const {
    std::set<std::string> out;
    for (const auto* r : tag(t)) {
      std::string k;
      for (const char* key : keys) {
        auto it = r->inputs.find(key);
        k += (it == r->inputs.end() ? std::string("?") : it->second) + "|";
      }
      out.insert(k);
    }
    return out;
  }

 private:
  std::map<std::string, std::vector<const GameReport*>> by_tag_;
};

std::string input(const GameReport& r, const std::string& key) {
  auto it = r.inputs.find(key);
  return it == r.inputs.end() ? std::string() : it->second;
}

std::string count_note(std::size_t n, const std::string& what) { return std::to_string(n) + " " + what; }

bool has_check(const GameReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.description.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance gate"};
  std::string config_path, work = "acceptance-out";
  app.add_option("--config", config_path, "experiment INI; built-in defaults when absent");
  app.add_option("--work", work, "directory for the determinism report files");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  ExperimentConfig config;
  try {
    config = config_path.empty() ? default_config() : load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  Run run = run_timed(config);
  double first_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Book book(run.reports);
  std::vector<std::pair<std::string, Grade>> grades;

  {
    Grade g;
    book.all_sound(g, "kraft-minimal-witnesses");
    for (const auto* r : book.tag("kraft-minimal-witnesses"))
      g.need(std::stoi(input(*r, "max_x_len")) >= 6, "max_x_len below 6");
    double s = run.seconds["kraft-minimal-witnesses"];
    g.need(s < kKraftSeconds, "took " + std::to_string(s) + " s");
    if (g.pass) g.detail = "|x| <= 6, " + std::to_string(s) + " s";
    grades.emplace_back("Kraft inequality over minimal witnesses", g);
  }
  {
    Grade g;
    book.all_sound(g, "incompressibility-bound");
    auto laws = book.distinct("incompressibility-bound", {"distribution"});
    g.need(laws.size() >= kMinIncompressibilityLaws, count_note(laws.size(), "distributions"));
    for (const auto* r : book.tag("incompressibility-bound")) {
      for (int k = 1; k <= 4; ++k) g.need(has_check(*r, "k = " + std::to_string(k) + ":"), "missing k = " + std::to_string(k));
      for (const auto& [name, v] : r->quantities)
        if (name.rfind("K^t(", 0) == 0) g.need(name.size() - 5 <= kMaxIncompressibilityBits, "support string too long");
    }
    if (g.pass) g.detail = count_note(laws.size(), "distributions x k in 1..4");
    grades.emplace_back("Incompressibility bound", g);
  }
  {
    Grade g;
    book.all_sound(g, "shannon-fano-lengths");
    const auto& rs = book.tag("shannon-fano-lengths");
    g.need(rs.size() >= kShannonFanoLaws, count_note(rs.size(), "distributions"));
    for (const auto* r : rs) g.need(std::stoul(input(*r, "support")) <= kMaxShannonFanoSupport, "support above 32");
    if (g.pass) g.detail = count_note(rs.size(), "seeded distributions");
    grades.emplace_back("Shannon-Fano length bounds", g);
  }
  {
    Grade g;
    book.all_sound(g, "advantage-completeness");
    auto got = book.distinct("advantage-completeness", {"sampler", "lambda", "N", "k"});
    std::size_t want = 0;
    for (const auto& s : sampler_ids())
      for (const char* l : {"2", "3", "4"})
        for (const char* n : {"2", "4"})
          for (const char* k : {"1", "2", "3"}) {
            ++want;
            g.need(got.count(s + "|" + l + "|" + n + "|" + k + "|"), "missing " + s + " lambda " + l + " N " + n + " k " + k);
          }
    if (g.pass) g.detail = count_note(want, "configurations");
    grades.emplace_back("Advantage-protocol completeness", g);
  }
  {
    Grade g;
    book.all_sound(g, "advantage-soundness-chain");
    auto pairs = book.distinct("advantage-soundness-chain", {"sampler", "cheater"});
    g.need(pairs.size() >= kMinSoundnessPairs, count_note(pairs.size(), "pairs"));
    for (const auto* r : book.tag("advantage-soundness-chain")) {
      g.need(has_check(*r, "Pinsker"), "no interval Pinsker leg");
      g.need(has_check(*r, "final: SD(A, B) <="), "no final SD(A, B) check");
    }
    if (g.pass) g.detail = count_note(pairs.size(), "(sampler, cheater) pairs");
    grades.emplace_back("Soundness inequality chain", g);
  }
  {
    Grade g;
    book.all_sound(g, "solver-to-sampler-marginals");
    auto got = book.distinct("solver-to-sampler-marginals", {"sampler", "cheater"});
    for (const auto& s : sampler_ids())
      for (const auto& c : cheater_ids()) g.need(got.count(s + "|" + c + "|"), "missing " + s + "/" + c);
    for (const auto* r : book.tag("solver-to-sampler-marginals"))
      g.need(r->quantities.at("SD(B, average marginal)") == 0, "nonzero distance");
    if (g.pass) g.detail = count_note(book.tag("solver-to-sampler-marginals").size(), "reports, SD exactly 0");
    grades.emplace_back("Solver to sampler identity", g);
  }
  {
    Grade g;
    book.all_sound(g, "transcript-attack-hybrids");
    auto rounds = book.distinct("transcript-attack-hybrids", {"rounds"});
    auto eps = book.distinct("transcript-attack-hybrids", {"eps"});
    // Inverter names carry their parameters, as in noisy(1/4); grade the kind.
    std::set<std::string> invs;
    for (const auto& i : book.distinct("transcript-attack-hybrids", {"inverter"})) invs.insert(i.substr(0, i.find_first_of("(|")));
    g.need(rounds.count("1|") && rounds.count("2|"), "needs 1- and 2-round protocols");
    for (const char* e : {"0/1|", "1/8|", "1/4|"}) g.need(eps.count(e), std::string("missing eps ") + e);
    for (const char* i : {"canonical", "noisy", "fixed"}) g.need(invs.count(i), std::string("missing inverter ") + i);
    std::size_t perfect = 0;
    for (const auto* r : book.tag("transcript-attack-hybrids")) {
      g.need(has_check(*r, "D_1 equals") && has_check(*r, "D_(l+1) equals"), "missing endpoint identity");
      if (r->quantities.at("eps_S") == 0 && r->quantities.at("eps_R") == 0) {
        ++perfect;
        g.need(r->quantities.at("SD(<A,C>,<B_q,C>)") == 0, "perfect oracles with nonzero final SD");
      }
    }
    g.need(perfect > 0, "no perfect-oracle instance");
    if (g.pass) g.detail = count_note(book.tag("transcript-attack-hybrids").size(), "instances, ") +
                           std::to_string(perfect) + " with final SD exactly 0";
    grades.emplace_back("Transcript-attack hybrids", g);
  }
  {
    Grade g;
    book.all_sound(g, "puzzle-attack");
    std::size_t perfect = 0;
    for (const auto* r : book.tag("puzzle-attack")) {
      g.need(has_check(*r, "success >= correctness - 2 eps_1 - eps_2"), "missing bound");
      if (r->quantities.at("eps_1") == 0 && r->quantities.at("eps_2") == 0) {
        ++perfect;
        g.need(r->quantities.at("success") == r->quantities.at("correctness"), "perfect oracles below correctness");
      }
    }
    g.need(perfect > 0, "no perfect-oracle instance");
    if (g.pass) g.detail = count_note(book.tag("puzzle-attack").size(), "instances, ") + std::to_string(perfect) +
                           " with success == correctness";
    grades.emplace_back("Puzzle attack", g);
  }
  {
    Grade g;
    for (const char* t : {"ivpoq-and-composition", "owpuzz-and-composition"}) book.all_sound(g, t);
    for (const auto* r : book.tag("ivpoq-and-composition"))
      g.need(has_check(*r, "composite honest acceptance == product"), "missing product identity");
    for (const auto* r : book.tag("owpuzz-and-composition"))
      g.need(has_check(*r, "composite correctness == product"), "missing product identity");
    if (g.pass) g.detail = count_note(book.tag("ivpoq-and-composition").size() + book.tag("owpuzz-and-composition").size(),
                                      "compositions");
    grades.emplace_back("AND composition", g);
  }
  {
    Grade g;
    book.all_sound(g, "good-set-markov");
    auto triples = book.distinct("good-set-markov", {"Q", "S", "p", "lambda"});
    g.need(triples.size() >= kMinGoodSetTriples, count_note(triples.size(), "triples"));
    if (g.pass) g.detail = count_note(triples.size(), "(Q, S, p) triples");
    grades.emplace_back("Good-set bound", g);
  }
  {
    Grade g;
    for (const char* t : {"zk-compiler-completeness", "zk-hybrid-provers", "zk-honest-verifier-simulator",
                          "extractable-commitment", "zk-compiler-public-coin"})
      book.all_sound(g, t);
    std::size_t binding = 0;
    for (const auto* r : book.tag("extractable-commitment"))
      if (input(*r, "perfectly_binding") == "true") {
        ++binding;
        g.need(r->quantities.at("binding_failures") == 0, "binding failure in a perfectly binding scheme");
      }
    g.need(binding > 0, "no perfectly binding scheme audited");
    for (const auto* r : book.tag("zk-compiler-completeness"))
      g.need(has_check(*r, "compiled acceptance == base acceptance - binding-failure mass"), "missing accounting");
    for (const auto* r : book.tag("zk-hybrid-provers"))
      g.need(has_check(*r, "P*_0 against the base == cheater against the compiled scheme"), "missing endpoint");
    if (g.pass)
      g.detail = count_note(book.tag("zk-honest-verifier-simulator").size(), "compiled instances, ") +
                 count_note(book.tag("zk-hybrid-provers").size(), "hybrid audits");
    grades.emplace_back("Zero-knowledge compiler", g);
  }
  {
    Grade g;
    for (const char* t : {"owf-to-owpuzz", "padding-to-quadratic", "lift-from-cofinite", "universal-owf-inheritance"})
      book.all_sound(g, t);
    for (const auto* r : book.tag("owf-to-owpuzz")) g.need(r->quantities.at("correctness") == 1, "correctness below 1");
    auto configs = book.distinct("universal-owf-inheritance", {"candidates"});
    g.need(configs.size() >= kMinUniversalConfigs, count_note(configs.size(), "registry configurations"));
    if (g.pass) g.detail = count_note(configs.size(), "universal configurations");
    grades.emplace_back("Appendix constructions", g);
  }
  {
    Grade g;
    std::filesystem::path dir(work);
    std::string a = (dir / "first.json").string(), b = (dir / "second.json").string();
    write_file(a, reports_to_json(run.reports));
    write_file(b, reports_to_json(run_suite(config)));
    std::string ta = read_file(a), tb = read_file(b);
    g.need(ta == tb, "report files differ");
    if (g.pass) g.detail = std::to_string(ta.size()) + " identical bytes";
    grades.emplace_back("Determinism", g);
  }

  bool all = true;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    const auto& [name, g] = grades[i];
    all = all && g.pass;
    std::printf("criterion %2zu: %s  %s (%s)\n", i + 1, g.pass ? "PASS" : "FAIL", name.c_str(), g.detail.c_str());
  }
  std::printf("suite: %zu reports in %.1f s (limit %.0f s)\n", run.reports.size(), first_seconds, kTotalSeconds);
  all = all && first_seconds < kTotalSeconds;
  return all ? 0 : 1;
}
