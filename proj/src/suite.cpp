#include <boost/algorithm/string.hpp>

#include "pqlab/corpus.hpp"
#include "pqlab/harness.hpp"
#include "pqlab/suites.hpp"

namespace pqlab {

namespace {

std::string str(int v) { return std::to_string(v); }

class JobList {
 public:
  void add(std::string tag, std::map<std::string, std::string> inputs, std::function<GameReport()> run) {
    jobs_.push_back({std::move(tag), std::move(inputs), std::move(run)});
  }
  std::vector<SuiteJob> take() { return std::move(jobs_); }

 private:
  std::vector<SuiteJob> jobs_;
};

std::vector<std::string> split_plus(const std::string& s) {
  std::vector<std::string> out;
  boost::split(out, s, boost::is_any_of("+"));
  for (auto& x : out) boost::trim(x);
  return out;
}

}  // namespace

std::vector<SuiteJob> suite_jobs(const ExperimentConfig& c) {
  JobList jobs;

  if (c.enabled("kraft")) {
    int x_len = c.ints("kraft", "max_x_len", {6}).at(0);
    int p_len = c.ints("kraft", "program_len", {12}).at(0);
    jobs.add("kraft-minimal-witnesses", {{"max_x_len", str(x_len)}},
             [x_len] { return kraft_witness_report(static_cast<std::size_t>(x_len)); });
    jobs.add("kraft-valid-programs", {{"program_len", str(p_len)}},
             [p_len] { return kraft_programs_report(static_cast<std::size_t>(p_len)); });
  }

  if (c.enabled("incompressibility")) {
    auto ks = c.ints("incompressibility", "ks", {1, 2, 3, 4});
    int x_len = c.ints("incompressibility", "max_x_len", {5}).at(0);
    for (auto& [name, law] : incompressibility_corpus(static_cast<std::size_t>(x_len)))
      jobs.add("incompressibility-bound", {{"distribution", name}},
               [name, law, ks] { return incompressibility_report(name, law, ks); });
  }

  if (c.enabled("shannon_fano")) {
    int n = c.ints("shannon_fano", "count", {50}).at(0);
    int support = c.ints("shannon_fano", "max_support", {32}).at(0);
    int width = c.ints("shannon_fano", "width", {5}).at(0);
    for (auto& [name, law] : random_laws(c.rng_seed, static_cast<std::size_t>(n), static_cast<std::size_t>(support),
                                         static_cast<std::size_t>(width)))
      jobs.add("shannon-fano-lengths", {{"distribution", name}},
               [name, law] { return shannon_fano_report(name, law); });
  }

  if (c.enabled("advantage")) {
    auto samplers = c.list("advantage", "samplers", sampler_ids());
    auto ns = c.ints("advantage", "n", {2, 4});
    auto ks = c.ints("advantage", "k", {1, 2, 3});
    int q = c.ints("advantage", "q", {1}).at(0);
    for (const auto& s : samplers)
      for (int lambda : c.ints("advantage", "lambdas", {2, 3, 4}))
        for (int n : ns)
          for (int k : ks)
            jobs.add("advantage-completeness",
                     {{"sampler", s}, {"lambda", str(lambda)}, {"N", str(n)}, {"k", str(k)}}, [=] {
                       return advantage_completeness_report(s, lambda, static_cast<std::size_t>(n),
                                                            static_cast<unsigned>(k), static_cast<std::uint64_t>(q));
                     });
  }

  if (c.enabled("advantage_shift")) {
    auto eps = c.rationals("advantage_shift", "eps", {0, Rational(1, 8), Rational(1, 4)});
    for (const auto& s : c.list("advantage_shift", "samplers", sampler_ids()))
      for (int lambda : c.suite_lambdas("advantage_shift"))
        for (const auto& e : eps)
          jobs.add("advantage-acceptance-shift", {{"sampler", s}, {"lambda", str(lambda)}, {"eps", to_string(e)}},
                   [=] { return advantage_shift_report(s, lambda, e); });
  }

  if (c.enabled("soundness")) {
    int n = c.ints("soundness", "n", {2}).at(0);
    int k = c.ints("soundness", "k", {1}).at(0);
    for (const auto& s : c.list("soundness", "samplers", sampler_ids()))
      for (const auto& ch : c.list("soundness", "cheaters", cheater_ids()))
        for (int lambda : c.suite_lambdas("soundness"))
          jobs.add("advantage-soundness-chain", {{"sampler", s}, {"cheater", ch}, {"lambda", str(lambda)}}, [=] {
            return soundness_report(s, ch, lambda, static_cast<std::size_t>(n), static_cast<unsigned>(k));
          });
    for (int lambda : c.suite_lambdas("soundness"))
      jobs.add("advantage-empty-accepting-set", {{"lambda", str(lambda)}},
               [lambda] { return empty_accepting_set_report(lambda); });
  }

  if (c.enabled("solver_sampler")) {
    auto ns = c.ints("solver_sampler", "n", {2, 3});
    for (const auto& s : c.list("solver_sampler", "samplers", sampler_ids()))
      for (const auto& ch : c.list("solver_sampler", "cheaters", cheater_ids()))
        for (int lambda : c.suite_lambdas("solver_sampler"))
          for (int n : ns)
            jobs.add("solver-to-sampler-marginals",
                     {{"sampler", s}, {"cheater", ch}, {"lambda", str(lambda)}, {"N", str(n)}},
                     [=] { return solver_sampler_report(s, ch, lambda, static_cast<std::size_t>(n)); });
  }

  if (c.enabled("good_set")) {
    auto ps = c.rationals("good_set", "p", {1, Rational(1, 2), Rational(1, 6)});
    for (const auto& s : c.list("good_set", "samplers", sampler_ids()))
      for (const auto& pert : c.list("good_set", "perturbations", perturbation_ids()))
        for (int lambda : c.suite_lambdas("good_set"))
          for (const auto& p : ps)
            jobs.add("good-set-markov", {{"Q", s}, {"S", pert}, {"lambda", str(lambda)}, {"p", to_string(p)}},
                     [=] { return good_set_report(s, pert, lambda, p); });
  }

  if (c.enabled("transcript_attack")) {
    auto eps = c.rationals("transcript_attack", "eps", {0, Rational(1, 8), Rational(1, 4)});
    Rational eta = c.rationals("transcript_attack", "eta", {Rational(1, 4)}).at(0);
    for (const auto& p : c.list("transcript_attack", "protocols", toy_protocol_ids()))
      for (const auto& e : eps)
        for (const auto& inv : c.list("transcript_attack", "inverters", {"canonical", "noisy", "fixed"}))
          for (int lambda : c.ints("transcript_attack", "lambdas", {2}))
            jobs.add("transcript-attack-hybrids",
                     {{"protocol", p}, {"eps", to_string(e)}, {"inverter", inv}, {"lambda", str(lambda)}},
                     [=] { return transcript_attack_report(p, e, inv, eta, lambda); });
  }

  if (c.enabled("puzzle_attack")) {
    auto eps = c.rationals("puzzle_attack", "eps", {0, Rational(1, 8), Rational(1, 4)});
    Rational eta = c.rationals("puzzle_attack", "eta", {Rational(1, 4)}).at(0);
    for (const auto& p : c.list("puzzle_attack", "puzzles", {"coin", "lossy", "owf:prefix", "owf:parity"}))
      for (const auto& e : eps)
        for (const auto& inv : c.list("puzzle_attack", "inverters", {"canonical", "noisy", "fixed"}))
          for (int lambda : c.ints("puzzle_attack", "lambdas", {2}))
            jobs.add("puzzle-attack",
                     {{"puzzle", p}, {"eps", to_string(e)}, {"inverter", inv}, {"lambda", str(lambda)}},
                     [=] { return puzzle_attack_report(p, e, inv, eta, lambda); });
    for (const auto& p : c.list("puzzle_attack", "puzzles", {"coin", "lossy", "owf:prefix", "owf:parity"}))
      for (const std::string adv : {"posterior", "first"})
        for (int lambda : c.ints("puzzle_attack", "lambdas", {2}))
          jobs.add("owpuzz-game", {{"puzzle", p}, {"adversary", adv}, {"lambda", str(lambda)}},
                   [=] { return owpuzz_game_report(p, adv, lambda); });
  }

  if (c.enabled("composition")) {
    auto cheaters = c.list("composition", "cheaters", protocol_cheater_ids());
    for (const auto& pair : c.list("composition", "pairs",
                                   {"nonint-9/10+nonint-4/5", "always+rej11", "rej11+rej11",
                                    "advantage-uniform1+rej11", "empty+nonint-4/5"}))
      for (int lambda : c.suite_lambdas("composition")) {
        auto parts = split_plus(pair);
        jobs.add("ivpoq-and-composition", {{"A", parts[0]}, {"B", parts[1]}, {"lambda", str(lambda)}},
                 [=] { return ivpoq_composition_report(parts[0], parts[1], cheaters, lambda); });
      }
    for (const auto& pair : c.list("composition", "puzzle_pairs",
                                   {"owf:prefix+owf:parity", "coin+lossy", "lossy+owf:xor-adjacent"}))
      for (int lambda : c.suite_lambdas("composition")) {
        auto parts = split_plus(pair);
        jobs.add("owpuzz-and-composition", {{"A", parts[0]}, {"B", parts[1]}, {"lambda", str(lambda)}},
                 [=] { return owpuzz_composition_report(parts[0], parts[1], lambda); });
      }
    for (int lambda : c.suite_lambdas("composition")) {
      for (const std::string base : {"advantage-uniform1", "nonint-9/10"})
        jobs.add("noninteractive-ivpoq-puzzle", {{"scheme", base}, {"lambda", str(lambda)}},
                 [=] { return noninteractive_puzzle_report(base, lambda); });
      jobs.add("noninteractive-ivpoq-puzzle", {{"scheme", "rej11"}, {"lambda", str(lambda)}},
               [=] { return not_noninteractive_report("rej11", lambda); });
    }
  }

  if (c.enabled("intqas")) {
    auto eps = c.rationals("intqas", "eps", {0, Rational(1, 8), Rational(1, 4)});
    for (const auto& b : c.list("intqas", "bases", {"rej11", "always", "nonint-9/10", "advantage-uniform1"}))
      for (int lambda : c.suite_lambdas("intqas"))
        for (const auto& e : eps)
          jobs.add("intqas-acceptance-shift", {{"scheme", b}, {"lambda", str(lambda)}, {"eps", to_string(e)}},
                   [=] { return intqas_shift_report(b, e, lambda); });
  }

  if (c.enabled("zk")) {
    auto bases = c.list("zk", "bases", {"always", "rej11", "empty", "advantage-uniform1"});
    auto commits = c.list("zk", "commits", commit_ids());
    auto cheaters = c.list("zk", "cheaters", zk_cheater_ids());
    auto lambdas = c.ints("zk", "lambdas", {2});
    for (const auto& cm : commits)
      for (int lambda : lambdas)
        for (int w : {1, 2})
          jobs.add("extractable-commitment", {{"commit", cm}, {"lambda", str(lambda)}, {"message_width", str(w)}},
                   [=] { return zk_commitment_report(cm, lambda, static_cast<std::size_t>(w)); });
    for (const auto& b : bases)
      for (const auto& cm : commits)
        for (int lambda : lambdas) {
          std::map<std::string, std::string> in{{"base", b}, {"commit", cm}, {"lambda", str(lambda)}};
          jobs.add("zk-compiler-completeness", in, [=] { return zk_completeness_report(b, cm, lambda); });
          jobs.add("zk-honest-verifier-simulator", in, [=] { return zk_simulator_report(b, cm, lambda); });
          jobs.add("hvszk-transcript-premise", in, [=] { return zk_premise_report(b, cm, lambda); });
          for (const auto& ch : cheaters) {
            auto in2 = in;
            in2["cheater"] = ch;
            jobs.add("zk-hybrid-provers", in2, [=] { return zk_hybrids_report(b, cm, ch, lambda); });
          }
        }
    jobs.add("zk-compiler-public-coin", {{"base", "private-coin"}, {"commit", "identity"}},
             [] { return zk_not_public_coin_report("private-coin", "identity"); });
  }

  if (c.enabled("appendix")) {
    auto fs = c.list("appendix", "functions", function_ids());
    auto advs = c.list("appendix", "adversaries", owf_adversary_ids());
    for (const auto& f : fs)
      for (const auto& a : advs)
        for (int lambda : c.suite_lambdas("appendix")) {
          std::map<std::string, std::string> in{{"f", f}, {"adversary", a}, {"lambda", str(lambda)}};
          jobs.add("owf-game", in, [=] { return owf_game_report(f, a, lambda); });
          jobs.add("owf-to-owpuzz", in, [=] { return owf_to_owpuzz_report(f, a, lambda); });
        }
    int pc = c.ints("appendix", "pad_c", {2}).at(0);
    for (const auto& f : fs)
      for (const auto& a : advs)
        for (int i : c.ints("appendix", "pad_i", {2, 3}))
          jobs.add("padding-to-quadratic", {{"f", f}, {"adversary", a}, {"c", str(pc)}, {"i", str(i)}}, [=] {
            return pad_report(f, a, static_cast<unsigned>(pc), static_cast<std::size_t>(i));
          });
    for (const auto& f : fs)
      for (const auto& a : advs)
        for (int l : c.ints("appendix", "lift_lengths", {5, 9}))
          jobs.add("lift-from-cofinite", {{"f", f}, {"adversary", a}, {"l", str(l)}},
                   [=] { return lift_report(f, a, static_cast<std::size_t>(l)); });
    for (const auto& u : c.list("appendix", "universal", {"literal+run-length+prefix", "parity", "literal+identity",
                                                          "run-length+xor-adjacent"}))
      for (const auto& a : advs)
        jobs.add("universal-owf-inheritance", {{"candidates", u}, {"adversary", a}},
                 [=] { return universal_report(u, a); });
  }

  return jobs.take();
}

GameReport run_job(const SuiteJob& job) {
  auto failed = [&](const std::string& msg) {
    GameReport r;
    r.lemma_tag = job.lemma_tag;
    r.inputs = job.inputs;
    r.error = msg;
    return r;
  };
  try {
    GameReport r = job.run();
    for (const auto& [k, v] : job.inputs) r.inputs.emplace(k, v);
    return r;
  } catch (const BudgetExceeded& e) {
    return failed(std::string("BudgetExceeded: ") + e.what());
  } catch (const std::exception& e) {
    return failed(std::string("error: ") + e.what());
  }
}

std::vector<GameReport> run_suite(const ExperimentConfig& config) {
  LimitsGuard guard(config.budget);
  std::vector<GameReport> out;
  for (const auto& job : suite_jobs(config)) out.push_back(run_job(job));
  return out;
}

}  // namespace pqlab
