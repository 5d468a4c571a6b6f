#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "pqlab/corpus.hpp"
#include "pqlab/harness.hpp"

namespace pqlab {

namespace {

std::vector<std::string> split_list(const std::string& s, const char* seps = ",") {
  std::vector<std::string> out;
  boost::split(out, s, boost::is_any_of(seps));
  for (auto& x : out) boost::trim(x);
  out.erase(std::remove_if(out.begin(), out.end(), [](const std::string& x) { return x.empty(); }), out.end());
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    std::uint64_t r = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return r;
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a non-negative integer: '" + v + "'");
  }
}

// "2,3,4" or "2-4" or a mix.
std::vector<int> parse_ints(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (const auto& item : split_list(v)) {
    auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      int a = static_cast<int>(parse_u64(key, item.substr(0, dash)));
      int b = static_cast<int>(parse_u64(key, item.substr(dash + 1)));
      if (b < a) throw ConfigError(key + ": empty range " + item);
      for (int i = a; i <= b; ++i) out.push_back(i);
    } else {
      out.push_back(static_cast<int>(parse_u64(key, item)));
    }
  }
  return out;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> k{
      {"run", {"lambdas", "rng_seed", "out", "csv"}},
      {"budget", {"max_seed_space", "max_program_len", "max_steps"}},
      {"kraft", {"enabled", "max_x_len", "program_len"}},
      {"incompressibility", {"enabled", "ks", "max_x_len"}},
      {"shannon_fano", {"enabled", "count", "max_support", "width"}},
      {"advantage", {"enabled", "samplers", "lambdas", "n", "k", "q"}},
      {"advantage_shift", {"enabled", "samplers", "lambdas", "eps"}},
      {"soundness", {"enabled", "samplers", "cheaters", "lambdas", "n", "k"}},
      {"solver_sampler", {"enabled", "samplers", "cheaters", "lambdas", "n"}},
      {"good_set", {"enabled", "samplers", "perturbations", "lambdas", "p"}},
      {"transcript_attack", {"enabled", "protocols", "eps", "inverters", "eta", "lambdas"}},
      {"puzzle_attack", {"enabled", "puzzles", "eps", "inverters", "eta", "lambdas"}},
      {"composition", {"enabled", "pairs", "cheaters", "puzzle_pairs", "lambdas"}},
      {"intqas", {"enabled", "bases", "eps", "lambdas"}},
      {"zk", {"enabled", "bases", "commits", "cheaters", "lambdas"}},
      {"appendix", {"enabled", "functions", "adversaries", "lambdas", "pad_c", "pad_i", "lift_lengths", "universal"}},
  };
  return k;
}

}  // namespace

Rational parse_rational(const std::string& s) {
  std::string t = boost::trim_copy(s);
  try {
    Rational r(t, 10);
    r.canonicalize();
    return r;
  } catch (const std::exception&) {
    throw ConfigError("not a rational: '" + s + "'");
  }
}

std::vector<std::string> ExperimentConfig::list(const std::string& section, const std::string& key,
                                                const std::vector<std::string>& def) const {
  auto s = sections.find(section);
  if (s == sections.end()) return def;
  auto k = s->second.find(key);
  if (k == s->second.end()) return def;
  return split_list(k->second);
}

std::vector<int> ExperimentConfig::ints(const std::string& section, const std::string& key,
                                        const std::vector<int>& def) const {
  auto s = sections.find(section);
  if (s == sections.end()) return def;
  auto k = s->second.find(key);
  if (k == s->second.end()) return def;
  return parse_ints(section + "." + key, k->second);
}

std::vector<Rational> ExperimentConfig::rationals(const std::string& section, const std::string& key,
                                                  const std::vector<Rational>& def) const {
  auto s = sections.find(section);
  if (s == sections.end()) return def;
  auto k = s->second.find(key);
  if (k == s->second.end()) return def;
  std::vector<Rational> out;
  for (const auto& item : split_list(k->second)) out.push_back(parse_rational(item));
  return out;
}

std::vector<int> ExperimentConfig::suite_lambdas(const std::string& section) const {
  return ints(section, "lambdas", lambdas);
}

bool ExperimentConfig::enabled(const std::string& section) const {
  auto v = list(section, "enabled", {"true"});
  return v.empty() || v[0] != "false";
}

ExperimentConfig default_config() { return ExperimentConfig{}; }

ExperimentConfig parse_config(const std::string& ini_text) {
  boost::property_tree::ptree tree;
  std::istringstream in(ini_text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  ExperimentConfig c;
  const auto& known = known_keys();
  for (const auto& [section, body] : tree) {
    auto ks = known.find(section);
    if (ks == known.end() || body.empty()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (!ks->second.count(key)) throw ConfigError("unknown key " + section + "." + key);
      c.sections[section][key] = value.data();
    }
  }
  auto get = [&](const std::string& s, const std::string& k) -> const std::string* {
    auto si = c.sections.find(s);
    if (si == c.sections.end()) return nullptr;
    auto ki = si->second.find(k);
    return ki == si->second.end() ? nullptr : &ki->second;
  };
  if (auto v = get("run", "lambdas")) c.lambdas = parse_ints("run.lambdas", *v);
  if (auto v = get("run", "rng_seed")) c.rng_seed = parse_u64("run.rng_seed", *v);
  if (auto v = get("run", "out")) c.out = *v;
  if (auto v = get("run", "csv")) c.csv = *v;
  if (auto v = get("budget", "max_seed_space")) c.budget.max_seed_space = parse_u64("budget.max_seed_space", *v);
  if (auto v = get("budget", "max_program_len"))
    c.budget.max_program_len = static_cast<int>(parse_u64("budget.max_program_len", *v));
  if (auto v = get("budget", "max_steps")) c.budget.max_steps = parse_u64("budget.max_steps", *v);
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

void validate(const ExperimentConfig& c) {
  if (c.lambdas.empty()) throw ConfigError("run.lambdas is empty");
  for (int l : c.lambdas)
    if (l < 1) throw ConfigError("lambda must be positive");
  if (c.budget.max_seed_space == 0 || c.budget.max_program_len <= 0 || c.budget.max_steps == 0)
    throw ConfigError("budgets must be positive");
  for (const auto& [section, keys] : c.sections) {
    if (keys.count("lambdas") && c.suite_lambdas(section).empty()) throw ConfigError(section + ".lambdas is empty");
    for (int l : c.suite_lambdas(section))
      if (l < 1) throw ConfigError(section + ".lambdas must be positive");
    for (const auto& [key, value] : keys) {
      if (key == "eps" || key == "p" || key == "eta") c.rationals(section, key, {});
      if (key == "n" || key == "k" || key == "q" || key == "ks" || key == "max_x_len" || key == "program_len" ||
          key == "count" || key == "max_support" || key == "width" || key == "pad_c" || key == "pad_i" ||
          key == "lift_lengths")
        if (c.ints(section, key, {}).empty()) throw ConfigError(section + "." + key + " is empty");
    }
  }
  // Every selected id must resolve.
  try {
    for (const auto& s : c.list("advantage", "samplers", {})) corpus_sampler(s);
    for (const auto& s : c.list("advantage_shift", "samplers", {})) corpus_sampler(s);
    for (const char* sec : {"soundness", "solver_sampler"}) {
      for (const auto& s : c.list(sec, "samplers", {})) corpus_sampler(s);
      for (const auto& s : c.list(sec, "cheaters", {})) corpus_cheater(s, corpus_sampler("uniform1"), 1);
    }
    for (const auto& s : c.list("good_set", "samplers", {})) corpus_sampler(s);
    for (const auto& s : c.list("good_set", "perturbations", {}))
      corpus_perturbation(s, ExactDistribution::uniform_bits(1), 1);
    for (const auto& s : c.list("transcript_attack", "protocols", {})) corpus_toy_protocol(s);
    for (const char* sec : {"transcript_attack", "puzzle_attack"})
      for (const auto& s : c.list(sec, "inverters", {})) corpus_inverter(s, 0, 0);
    for (const auto& s : c.list("puzzle_attack", "puzzles", {})) corpus_puzzle(s);
    for (const auto& s : c.list("intqas", "bases", {})) corpus_base(s);
    for (const auto& s : c.list("zk", "bases", {})) corpus_base(s);
    for (const auto& s : c.list("zk", "commits", {})) corpus_commit(s);
    for (const auto& s : c.list("zk", "cheaters", {}))
      if (std::find(zk_cheater_ids().begin(), zk_cheater_ids().end(), s) == zk_cheater_ids().end())
        throw UnknownId("unknown zk cheater id: " + s);
    for (const auto& s : c.list("composition", "cheaters", {}))
      if (std::find(protocol_cheater_ids().begin(), protocol_cheater_ids().end(), s) == protocol_cheater_ids().end())
        throw UnknownId("unknown protocol cheater id: " + s);
    for (const auto& pair : c.list("composition", "pairs", {})) {
      auto parts = split_list(pair, "+");
      if (parts.size() != 2) throw ConfigError("composition.pairs entry needs a+b: " + pair);
      corpus_base(parts[0]);
      corpus_base(parts[1]);
    }
    for (const auto& pair : c.list("composition", "puzzle_pairs", {})) {
      auto parts = split_list(pair, "+");
      if (parts.size() != 2) throw ConfigError("composition.puzzle_pairs entry needs a+b: " + pair);
      corpus_puzzle(parts[0]);
      corpus_puzzle(parts[1]);
    }
    for (const auto& s : c.list("appendix", "functions", {})) corpus_function(s);
    for (const auto& s : c.list("appendix", "adversaries", {})) corpus_owf_adversary(s, corpus_function("identity"));
    for (const auto& conf : c.list("appendix", "universal", {})) {
      auto parts = split_list(conf, "+");
      if (parts.empty()) throw ConfigError("appendix.universal entry is empty");
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] == "literal" || parts[i] == "run-length") {
          if (i + 1 == parts.size()) throw ConfigError("appendix.universal must end with a function id: " + conf);
          continue;
        }
        corpus_function(parts[i]);
      }
    }
  } catch (const UnknownId& e) {
    throw ConfigError(e.what());
  }
}

void apply_budget_env(ExperimentConfig& c) {
  const char* env = std::getenv(kBudgetEnv);
  if (!env || !*env) return;
  std::string v = env;
  if (v.find('=') == std::string::npos) {
    std::uint64_t n = parse_u64(kBudgetEnv, boost::trim_copy(v));
    c.budget.max_seed_space = n;
    c.budget.max_program_len = static_cast<int>(n);
    c.budget.max_steps = n;
    return;
  }
  for (const auto& item : split_list(v)) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError(std::string(kBudgetEnv) + ": expected key=value, got " + item);
    std::string key = boost::trim_copy(item.substr(0, eq));
    std::uint64_t n = parse_u64(kBudgetEnv, boost::trim_copy(item.substr(eq + 1)));
    if (key == "max_seed_space")
      c.budget.max_seed_space = n;
    else if (key == "max_program_len")
      c.budget.max_program_len = static_cast<int>(n);
    else if (key == "max_steps")
      c.budget.max_steps = n;
    else
      throw ConfigError(std::string(kBudgetEnv) + ": unknown key " + key);
  }
}

}  // namespace pqlab
