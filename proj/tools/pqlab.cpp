#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pqlab/corpus.hpp"
#include "pqlab/harness.hpp"
#include "pqlab/suites.hpp"

using namespace pqlab;
using nlohmann::json;

namespace {

// Exit codes: 0 all checks pass, 1 some check fails, 2 usage or input error.
int emit(const GameReport& r) {
  std::cout << report_to_json(r);
  return r.all_pass() ? 0 : 1;
}

// Hex digits give four bits each; a 0b prefix gives the bits literally.
BitString parse_bits(const std::string& s) {
  if (s.rfind("0b", 0) == 0) return BitString(s.substr(2));
  return BitString::from_hex(s);
}

// A hex seed read as an integer and written at the party's seed width.
BitString parse_seed(const std::string& hex, std::size_t width) {
  std::uint64_t v = std::stoull(hex.empty() ? "0" : hex, nullptr, 16);
  if (width < 64 && v >> width) throw std::invalid_argument("seed " + hex + " does not fit in " + std::to_string(width) + " bits");
  return BitString::from_uint(v, width);
}

// "exact" or "shift:<eps>".
Rational parse_sampler_shift(const std::string& s) {
  if (s == "exact") return 0;
  if (s.rfind("shift:", 0) == 0) return parse_rational(s.substr(6));
  throw std::invalid_argument("sampler must be 'exact' or 'shift:<eps>', got " + s);
}

struct Scheme {
  Party verifier;
  Party prover;
  std::optional<IVPoQ> ivpoq;
};

Scheme resolve_scheme(const std::string& id) {
  const auto& toys = toy_protocol_ids();
  if (std::find(toys.begin(), toys.end(), id) != toys.end()) {
    ToyProtocol t = corpus_toy_protocol(id);
    return {t.c, t.a, std::nullopt};
  }
  IVPoQ s = corpus_base(id);
  return {s.verifier1, s.prover, s};
}

json messages_json(const Transcript& t) {
  json out = json::array();
  for (const auto& [who, m] : t.entries()) out.push_back({{"from", std::string(1, who)}, {"bits", m.str()}});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pqlab: exact small-instance experiments"};
  app.require_subcommand(1);
  int code = 0;

  auto* kt = app.add_subcommand("kt", "time-bounded prefix complexity under the default machine");
  std::string kt_x;
  std::optional<std::uint64_t> kt_budget;
  std::optional<std::size_t> kt_len;
  kt->add_option("--x", kt_x, "string as hex, or 0b followed by bits")->required();
  kt->add_option("--budget", kt_budget, "step budget t");
  kt->add_option("--max-len", kt_len, "longest program searched");

  auto* kraft = app.add_subcommand("kraft", "Kraft sum over minimal witnesses of all strings up to a length");
  std::size_t kraft_len = 6;
  kraft->add_option("--len", kraft_len, "longest string")->required();

  auto* game = app.add_subcommand("game", "one-way function and puzzle games");
  game->require_subcommand(1);
  std::string g_f, g_scheme, g_adv;
  int g_lambda = 2;
  auto* game_owf = game->add_subcommand("owf", "inversion game against a function family");
  game_owf->add_option("--f", g_f)->required();
  game_owf->add_option("--adv", g_adv)->required();
  game_owf->add_option("--lambda", g_lambda)->required();
  auto* game_puzz = game->add_subcommand("owpuzz", "one-way puzzle game");
  game_puzz->add_option("--scheme", g_scheme)->required();
  game_puzz->add_option("--adv", g_adv)->required();
  game_puzz->add_option("--lambda", g_lambda)->required();

  auto* protocol = app.add_subcommand("protocol", "run interactive protocols");
  protocol->require_subcommand(1);
  std::string p_scheme, p_seed_a = "0", p_seed_b = "0";
  int p_lambda = 2;
  auto* p_run = protocol->add_subcommand("run", "one execution from fixed seeds");
  p_run->add_option("--scheme", p_scheme)->required();
  p_run->add_option("--lambda", p_lambda)->required();
  p_run->add_option("--seed-a", p_seed_a, "verifier seed, hex");
  p_run->add_option("--seed-b", p_seed_b, "prover seed, hex");
  auto* p_dist = protocol->add_subcommand("dist", "exact transcript law");
  p_dist->add_option("--scheme", p_scheme)->required();
  p_dist->add_option("--lambda", p_lambda)->required();

  auto* adv = app.add_subcommand("advantage", "the sampling-advantage protocol");
  adv->require_subcommand(1);
  std::string a_sampler, a_cheater;
  std::uint64_t a_q = 1;
  int a_lambda = 2;
  unsigned a_k = 1;
  std::size_t a_n = 2;
  auto* a_build = adv->add_subcommand("build", "honest acceptance of the protocol for a sampler");
  a_build->add_option("--sampler", a_sampler)->required();
  a_build->add_option("--q", a_q);
  a_build->add_option("--lambda", a_lambda)->required();
  a_build->add_option("--k", a_k);
  a_build->add_option("--n", a_n, "tuple length N");
  auto* a_audit = adv->add_subcommand("audit", "soundness chain against a cheater");
  a_audit->add_option("--sampler", a_sampler)->required();
  a_audit->add_option("--cheater", a_cheater)->required();
  a_audit->add_option("--lambda", a_lambda)->required();
  a_audit->add_option("--k", a_k);
  a_audit->add_option("--n", a_n, "tuple length N");

  auto* reduce = app.add_subcommand("reduce", "attacks built from inverters");
  reduce->require_subcommand(1);
  std::string r_protocol, r_puzzle, r_sampler = "exact", r_inverter = "canonical", r_eta = "1/4";
  int r_lambda = 2;
  auto* r_ta = reduce->add_subcommand("transcript-attack", "hybrid audit of the transcript attack");
  r_ta->add_option("--protocol", r_protocol)->required();
  r_ta->add_option("--sampler", r_sampler, "exact or shift:<eps>");
  r_ta->add_option("--inverter", r_inverter, "canonical, noisy or fixed");
  r_ta->add_option("--eta", r_eta, "noise rate of the noisy inverter");
  r_ta->add_option("--lambda", r_lambda)->required();
  auto* r_pa = reduce->add_subcommand("puzzle-attack", "success of the puzzle attack");
  r_pa->add_option("--puzzle", r_puzzle)->required();
  r_pa->add_option("--sampler", r_sampler, "exact or shift:<eps>");
  r_pa->add_option("--inverter", r_inverter, "canonical, noisy or fixed");
  r_pa->add_option("--eta", r_eta, "noise rate of the noisy inverter");
  r_pa->add_option("--lambda", r_lambda)->required();

  auto* zk = app.add_subcommand("zk", "commit-and-open compiler");
  zk->require_subcommand(1);
  std::string z_base, z_commit, z_cheater = "honest";
  int z_lambda = 2;
  auto* z_compile = zk->add_subcommand("compile", "completeness of the compiled scheme");
  auto* z_hybrids = zk->add_subcommand("audit-hybrids", "hybrid provers against the compiled scheme");
  auto* z_sim = zk->add_subcommand("simulate", "honest-verifier simulator distance");
  for (auto* s : {z_compile, z_hybrids, z_sim}) {
    s->add_option("--base", z_base)->required();
    s->add_option("--commit", z_commit)->required();
    s->add_option("--lambda", z_lambda)->required();
  }
  z_hybrids->add_option("--cheater", z_cheater);

  auto* suite = app.add_subcommand("suite", "configured experiment suites");
  suite->require_subcommand(1);
  std::string s_config, s_out, s_csv;
  auto* s_run = suite->add_subcommand("run", "run every enabled suite and write the reports");
  s_run->add_option("--config", s_config)->required();
  s_run->add_option("--out", s_out, "JSON output path, overrides run.out");
  s_run->add_option("--csv", s_csv, "CSV output path, overrides run.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig base = default_config();
    apply_budget_env(base);
    LimitsGuard guard(base.budget);

    if (*kt) {
      BitString x = parse_bits(kt_x);
      KtResult r = kt_complexity(default_universal_machine(), x, kt_budget.value_or(limits().max_steps),
                                 kt_len.value_or(default_max_len(x)));
      json j{{"x", x.str()}, {"budget", r.budget}, {"max_len", r.max_len}};
      j["value"] = r.value ? json(*r.value) : json("infinite");
      j["witness"] = r.value ? json(r.witness.str()) : json(nullptr);
      std::cout << j.dump(2) << "\n";
    } else if (*kraft) {
      code = emit(kraft_witness_report(kraft_len));
    } else if (*game_owf) {
      code = emit(owf_game_report(g_f, g_adv, g_lambda));
    } else if (*game_puzz) {
      code = emit(owpuzz_game_report(g_scheme, g_adv, g_lambda));
    } else if (*p_run) {
      Scheme s = resolve_scheme(p_scheme);
      Transcript t = execute(s.verifier, s.prover, p_lambda, parse_seed(p_seed_a, seed_width(s.verifier, p_lambda)),
                             parse_seed(p_seed_b, seed_width(s.prover, p_lambda)));
      json j{{"scheme", p_scheme}, {"lambda", p_lambda}, {"messages", messages_json(t)}, {"encoding", t.encode().str()}};
      if (s.ivpoq) j["accepted"] = s.ivpoq->verifier2(p_lambda, t.messages);
      std::cout << j.dump(2) << "\n";
    } else if (*p_dist) {
      Scheme s = resolve_scheme(p_scheme);
      ExactDistribution law = transcript_distribution(s.verifier, s.prover, p_lambda);
      json pmf = json::array();
      for (const auto& [enc, w] : law.masses()) {
        Transcript t = Transcript::decode(p_lambda, enc);
        json e{{"encoding", enc.str()}, {"messages", messages_json(t)}, {"mass", to_string(w)}};
        if (s.ivpoq) e["accepted"] = s.ivpoq->verifier2(p_lambda, t.messages);
        pmf.push_back(e);
      }
      std::cout << json{{"scheme", p_scheme}, {"lambda", p_lambda}, {"pmf", pmf}}.dump(2) << "\n";
    } else if (*a_build) {
      code = emit(advantage_completeness_report(a_sampler, a_lambda, a_n, a_k, a_q));
    } else if (*a_audit) {
      code = emit(soundness_report(a_sampler, a_cheater, a_lambda, a_n, a_k));
    } else if (*r_ta) {
      code = emit(transcript_attack_report(r_protocol, parse_sampler_shift(r_sampler), r_inverter,
                                           parse_rational(r_eta), r_lambda));
    } else if (*r_pa) {
      code = emit(puzzle_attack_report(r_puzzle, parse_sampler_shift(r_sampler), r_inverter, parse_rational(r_eta),
                                       r_lambda));
    } else if (*z_compile) {
      code = emit(zk_completeness_report(z_base, z_commit, z_lambda));
    } else if (*z_hybrids) {
      code = emit(zk_hybrids_report(z_base, z_commit, z_cheater, z_lambda));
    } else if (*z_sim) {
      code = emit(zk_simulator_report(z_base, z_commit, z_lambda));
    } else if (*s_run) {
      ExperimentConfig c = load_config(s_config);
      apply_budget_env(c);
      if (!s_out.empty()) c.out = s_out;
      if (!s_csv.empty()) c.csv = s_csv;
      auto reports = run_suite(c);
      write_file(c.out, reports_to_json(reports));
      if (!c.csv.empty()) write_file(c.csv, reports_to_csv(reports));
      std::size_t failed = 0;
      for (const auto& r : reports) failed += !r.all_pass();
      std::cerr << reports.size() << " reports, " << failed << " failing\n";
      code = failed ? 1 : 0;
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "BudgetExceeded: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
