#include "pqlab/zk.hpp"

#include <algorithm>

namespace pqlab {

CommitScheme::CommitScheme(std::string id, FunctionFamily f, std::function<std::size_t(int)> salt_width)
    : id_(std::move(id)),
      f_(std::move(f)),
      salt_width_(std::move(salt_width)),
      table_(std::make_shared<std::map<std::pair<int, std::size_t>, std::map<BitString, std::vector<BitString>>>>()) {}

BitString CommitScheme::commit(int lambda, const BitString& m, const BitString& salt) const {
  return f_.eval(lambda, m + salt);
}

bool CommitScheme::open(int lambda, const BitString& com, const BitString& m, const BitString& salt) const {
  return salt.size() == salt_width(lambda) && commit(lambda, m, salt) == com;
}

ExactDistribution CommitScheme::commitment_law(int lambda, const BitString& m) const {
  std::size_t s = salt_width(lambda);
  MassAccumulator acc;
  Rational w = pow2(-static_cast<int>(s));
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << s); ++v) acc.add(commit(lambda, m, BitString::from_uint(v, s)), w);
  return acc.finish();
}

std::size_t CommitScheme::commitment_width(int lambda, std::size_t w) const {
  return commit(lambda, BitString::zeros(w), BitString::zeros(salt_width(lambda))).size();
}

const std::map<BitString, std::vector<BitString>>& CommitScheme::openers(int lambda, std::size_t w) const {
  auto key = std::make_pair(lambda, w);
  auto it = table_->find(key);
  if (it != table_->end()) return it->second;
  std::size_t s = salt_width(lambda);
  check_seed_space(w + s, limits().max_seed_space);
  std::map<BitString, std::vector<BitString>> t;
  for (std::uint64_t mv = 0; mv < (std::uint64_t{1} << w); ++mv) {
    BitString m = BitString::from_uint(mv, w);
    for (std::uint64_t sv = 0; sv < (std::uint64_t{1} << s); ++sv) {
      auto& ms = t[commit(lambda, m, BitString::from_uint(sv, s))];
      if (ms.empty() || ms.back() != m) ms.push_back(m);
    }
  }
  return table_->emplace(key, std::move(t)).first->second;
}

std::optional<BitString> CommitScheme::extract(int lambda, std::size_t w, const BitString& com) const {
  const auto& t = openers(lambda, w);
  auto it = t.find(com);
  if (it == t.end()) return std::nullopt;
  return it->second.front();
}

std::optional<BitString> CommitScheme::val(int lambda, std::size_t w, const BitString& com) const {
  const auto& t = openers(lambda, w);
  auto it = t.find(com);
  if (it == t.end() || it->second.size() != 1) return std::nullopt;
  return it->second.front();
}

Rational CommitScheme::hiding_distance(int lambda, std::size_t w) const {
  check_seed_space(w, limits().max_seed_space);
  std::vector<ExactDistribution> laws;
  for (std::uint64_t mv = 0; mv < (std::uint64_t{1} << w); ++mv)
    laws.push_back(commitment_law(lambda, BitString::from_uint(mv, w)));
  Rational best = 0;
  for (std::size_t i = 0; i < laws.size(); ++i)
    for (std::size_t j = i + 1; j < laws.size(); ++j) best = std::max(best, statistical_distance(laws[i], laws[j]));
  return best;
}

std::vector<BindingFailure> CommitScheme::binding_failures(int lambda, std::size_t w) const {
  std::vector<BindingFailure> out;
  for (const auto& [com, ms] : openers(lambda, w))
    if (ms.size() > 1) out.push_back({com, ms[0], ms[1]});
  return out;
}

CommitScheme toy_extractable_commitment(const FunctionFamily& f, std::size_t salt_width) {
  return CommitScheme("commit(" + f.id + ",salt=" + std::to_string(salt_width) + ")", f,
                      [salt_width](int) { return salt_width; });
}

std::vector<std::size_t> prover_widths(const IVPoQ& scheme, int lambda) {
  std::vector<std::size_t> w;
  for (std::size_t k = 1; k <= scheme.verifier1.rounds(lambda); ++k) w.push_back(scheme.prover.width(lambda, k));
  return w;
}

namespace {

BitString deterministic(const ExactDistribution& d, const std::string& who) {
  if (!d.is_point()) throw std::invalid_argument(who + " is randomized beyond its seed; the compiler needs p_i from the seed");
  return d.masses().begin()->first;
}

}  // namespace

ZkIVPoQ compile_zk(const IVPoQ& base, const CommitScheme& commit) {
  if (!base.public_coin) throw NotPublicCoin(base.id + " is not public-coin");
  ZkIVPoQ zk{base, commit, base};
  IVPoQ& c = zk.compiled;
  c.id = "zk(" + base.id + "," + commit.id() + ")";
  c.verifier1 = base.verifier1;
  Party bp = base.prover;
  c.prover.id = "committing(" + bp.id + ")";
  c.prover.seed_dist = bp.seed_dist;
  c.prover.rounds = bp.rounds;
  c.prover.width = [bp, commit](int lambda, std::size_t k) {
    return commit.commitment_width(lambda, bp.width(lambda, k));
  };
  c.prover.next_message = [bp, commit](int lambda, const BitString& seed, const std::vector<BitString>& partial) {
    std::vector<BitString> base_partial;
    BitString p;
    for (std::size_t j = 0; j < partial.size(); j += 2) {
      base_partial.push_back(partial[j]);
      p = deterministic(bp.next_message(lambda, seed, base_partial), bp.id);
      base_partial.push_back(p);
    }
    return commit.commitment_law(lambda, p);
  };
  IVPoQ b = base;
  c.verifier2 = [b, commit](int lambda, const std::vector<BitString>& msgs) {
    std::vector<BitString> opened;
    for (std::size_t i = 0; i + 1 < msgs.size(); i += 2) {
      auto p = commit.val(lambda, b.prover.width(lambda, i / 2 + 1), msgs[i + 1]);
      if (!p) return false;
      opened.push_back(msgs[i]);
      opened.push_back(*p);
    }
    return b.verifier2(lambda, opened);
  };
  c.public_coin = true;
  return zk;
}

Rational binding_failure_acceptance(const ZkIVPoQ& zk, int lambda) {
  std::vector<std::size_t> w = prover_widths(zk.base, lambda);
  Rational beta = 0;
  for (const auto& [t, mass] : transcript_distribution(zk.base.verifier1, zk.base.prover, lambda).masses()) {
    auto msgs = *decode_list(t);
    if (!zk.base.verifier2(lambda, msgs)) continue;
    Rational all_unique = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Rational unique = 0;
      for (const auto& [com, q] : zk.commit.commitment_law(lambda, msgs[2 * i + 1]).masses())
        if (zk.commit.val(lambda, w[i], com)) unique += q;
      all_unique *= unique;
    }
    beta += mass * (1 - all_unique);
  }
  return beta;
}

GameReport compiler_completeness_audit(const ZkIVPoQ& zk, int lambda) {
  GameReport r;
  r.lemma_tag = "zk-compiler-completeness";
  r.inputs = {{"base", zk.base.id}, {"commit", zk.commit.id()}, {"lambda", std::to_string(lambda)}};
  Rational base_acc = ivpoq_accept_prob(zk.base, zk.base.prover, lambda);
  Rational compiled_acc = ivpoq_accept_prob(zk.compiled, zk.compiled.prover, lambda);
  Rational beta = binding_failure_acceptance(zk, lambda);
  r.quantities["base_acceptance"] = base_acc;
  r.quantities["compiled_acceptance"] = compiled_acc;
  r.quantities["binding_failure_acceptance"] = beta;
  r.check("compiled acceptance == base acceptance - binding-failure mass", compiled_acc, "==", base_acc - beta);
  r.check("compiled acceptance >= base acceptance - binding-failure mass", compiled_acc, ">=", base_acc - beta);
  return r;
}

SeededSampler hv_simulator(const ZkIVPoQ& zk) {
  IVPoQ base = zk.base;
  CommitScheme commit = zk.commit;
  auto coin_widths = [base](int lambda) {
    std::vector<std::size_t> w;
    for (std::size_t k = 1; k <= base.verifier1.rounds(lambda); ++k) w.push_back(base.verifier1.width(lambda, k));
    return w;
  };
  SeededSampler s;
  s.id = "hv-simulator(" + zk.compiled.id + ")";
  s.seed_len = [coin_widths, commit](int lambda) {
    std::size_t total = 0;
    for (auto w : coin_widths(lambda)) total += w + commit.salt_width(lambda);
    return total;
  };
  s.out_len = [base, coin_widths, commit](int lambda) {
    std::vector<BitString> msgs;
    auto cw = coin_widths(lambda);
    auto pw = prover_widths(base, lambda);
    for (std::size_t i = 0; i < cw.size(); ++i) {
      msgs.push_back(BitString::zeros(cw[i]));
      msgs.push_back(BitString::zeros(commit.commitment_width(lambda, pw[i])));
    }
    return encode_list(msgs).size();
  };
  s.eval = [base, coin_widths, commit](int lambda, const BitString& seed) {
    auto cw = coin_widths(lambda);
    auto pw = prover_widths(base, lambda);
    std::size_t salt = commit.salt_width(lambda), off = 0;
    std::vector<BitString> msgs;
    for (std::size_t i = 0; i < cw.size(); ++i) {
      msgs.push_back(seed.slice(off, cw[i]));
      off += cw[i];
      msgs.push_back(commit.commit(lambda, BitString::zeros(pw[i]), seed.slice(off, salt)));
      off += salt;
    }
    return encode_list(msgs);
  };
  return s;
}

GameReport simulator_audit(const ZkIVPoQ& zk, int lambda) {
  GameReport r;
  r.lemma_tag = "zk-honest-verifier-simulator";
  r.inputs = {{"scheme", zk.compiled.id}, {"lambda", std::to_string(lambda)}};
  ExactDistribution view = transcript_distribution(zk.compiled.verifier1, zk.compiled.prover, lambda);
  ExactDistribution sim = exact_pmf(hv_simulator(zk), lambda);
  Rational hiding = 0;
  auto widths = prover_widths(zk.base, lambda);
  for (auto w : widths) hiding = std::max(hiding, zk.commit.hiding_distance(lambda, w));
  Rational sd = statistical_distance(view, sim);
  Rational l(static_cast<unsigned long>(widths.size()));
  r.quantities["SD(view,sim)"] = sd;
  r.quantities["hiding_distance"] = hiding;
  r.check("SD(view, simulator) <= l * hiding_distance", sd, "<=", l * hiding);
  return r;
}

namespace {

struct HybridPass {
  Rational acceptance = 0;
  Rational discrepancy = 0;  // Pr[extract != val] in round j
};

HybridPass run_hybrid(const ZkIVPoQ& zk, const ExactDistribution& transcripts, int lambda, std::size_t j) {
  auto widths = prover_widths(zk.base, lambda);
  HybridPass h;
  for (const auto& [t, mass] : transcripts.masses()) {
    auto msgs = *decode_list(t);
    std::vector<BitString> opened;
    bool abort = false;
    for (std::size_t i = 1; i <= widths.size(); ++i) {
      const BitString& com = msgs[2 * i - 1];
      auto e = zk.commit.extract(lambda, widths[i - 1], com);
      auto v = zk.commit.val(lambda, widths[i - 1], com);
      if (i == j && e != v) h.discrepancy += mass;
      auto p = i <= j ? e : v;
      if (!p) abort = true;
      opened.push_back(msgs[2 * i - 2]);
      opened.push_back(p ? *p : BitString());
    }
    if (!abort && zk.base.verifier2(lambda, opened)) h.acceptance += mass;
  }
  return h;
}

}  // namespace

Rational hybrid_acceptance(const ZkIVPoQ& zk, const Party& cheater, int lambda, std::size_t j) {
  return run_hybrid(zk, transcript_distribution(zk.compiled.verifier1, cheater, lambda), lambda, j).acceptance;
}

GameReport hybrid_provers_audit(const ZkIVPoQ& zk, const Party& cheater, int lambda) {
  GameReport r;
  r.lemma_tag = "zk-hybrid-provers";
  r.inputs = {{"scheme", zk.compiled.id},
              {"cheater", cheater.id},
              {"lambda", std::to_string(lambda)},
              {"truncation", "no-op: the brute-force extractor runs in fixed time"}};
  ExactDistribution transcripts = transcript_distribution(zk.compiled.verifier1, cheater, lambda);
  Rational compiled_acc = accept_prob(zk.compiled, transcripts, lambda);
  r.quantities["compiled_acceptance"] = compiled_acc;
  std::size_t l = zk.base.verifier1.rounds(lambda);
  std::vector<Rational> acc;
  for (std::size_t j = 0; j <= l; ++j) {
    HybridPass h = run_hybrid(zk, transcripts, lambda, j);
    acc.push_back(h.acceptance);
    std::string js = std::to_string(j);
    r.quantities["acc_" + js] = h.acceptance;
    if (j == 0) {
      r.check("P*_0 against the base == cheater against the compiled scheme", h.acceptance, "==", compiled_acc);
      continue;
    }
    r.quantities["disc_" + js] = h.discrepancy;
    r.check("acc_" + js + " >= acc_" + std::to_string(j - 1) + " - disc_" + js, acc[j], ">=",
            acc[j - 1] - h.discrepancy);
  }
  return r;
}

GameReport commitment_audit(const CommitScheme& c, int lambda, std::size_t w) {
  GameReport r;
  r.lemma_tag = "extractable-commitment";
  r.inputs = {{"commit", c.id()}, {"lambda", std::to_string(lambda)}, {"message_width", std::to_string(w)}};
  std::size_t s = c.salt_width(lambda);
  check_seed_space(w + s, limits().max_seed_space);
  std::size_t open_failures = 0;
  for (std::uint64_t mv = 0; mv < (std::uint64_t{1} << w); ++mv)
    for (std::uint64_t sv = 0; sv < (std::uint64_t{1} << s); ++sv) {
      BitString m = BitString::from_uint(mv, w), salt = BitString::from_uint(sv, s);
      if (!c.open(lambda, c.commit(lambda, m, salt), m, salt)) ++open_failures;
    }
  r.check("honest commit-then-open accepts (failures)", Rational(static_cast<unsigned long>(open_failures)), "==", 0);
  std::size_t disagreements = 0, coms = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << (w + s)); ++v) {
    BitString com = c.commit(lambda, BitString::from_uint(v >> s, w), BitString::from_uint(v & ((1u << s) - 1), s));
    ++coms;
    auto val = c.val(lambda, w, com);
    if (val && c.extract(lambda, w, com) != val) ++disagreements;
  }
  r.check("extract == val wherever val is defined (exceptions)", Rational(static_cast<unsigned long>(disagreements)),
          "==", 0);
  auto failures = c.binding_failures(lambda, w);
  r.quantities["binding_failures"] = Rational(static_cast<unsigned long>(failures.size()));
  r.quantities["hiding_distance"] = c.hiding_distance(lambda, w);
  if (!failures.empty())
    r.inputs["binding_witness"] =
        failures[0].commitment.str() + " opens to " + failures[0].first.str() + " and " + failures[0].second.str();
  return r;
}

GameReport hvszk_transcript_premise_check(const IVPoQ& scheme, const SeededSampler& simulator, int lambda) {
  GameReport r;
  r.lemma_tag = "hvszk-transcript-premise";
  r.inputs = {{"scheme", scheme.id},
              {"simulator", simulator.id},
              {"lambda", std::to_string(lambda)},
              {"follow_up", "simulator feeds games::universal_owf via reductions::round_function"}};
  Rational sd = statistical_distance(transcript_distribution(scheme.verifier1, scheme.prover, lambda),
                                     exact_pmf(simulator, lambda));
  r.quantities["SD(transcript,simulator)"] = sd;
  r.check("0 <= SD <= 1", sd >= 0 && sd <= 1);
  return r;
}

}  // namespace pqlab
