#include "pqlab/reductions.hpp"

#include <algorithm>
#include <memory>

namespace pqlab {

std::vector<BitString> sampler_transcript(const SeededSampler& s, std::size_t rounds, int lambda, const BitString& r) {
  auto msgs = decode_list(s.eval(lambda, r));
  if (!msgs || msgs->size() != 2 * rounds)
    throw MalformedTuple(s.id + " did not emit a " + std::to_string(rounds) + "-round transcript");
  return *msgs;
}

BitString RoundFunction::eval(int lambda, const BitString& input) const {
  std::size_t kb = k_bits();
  std::size_t k = static_cast<std::size_t>(input.prefix(kb).to_uint()) + 1;
  if (k > rounds) return BitString::zeros(1);
  auto msgs = sampler_transcript(sampler, rounds, lambda, input.slice(kb, input.size() - kb));
  std::vector<BitString> out{input.prefix(kb)};
  out.insert(out.end(), msgs.begin(), msgs.begin() + static_cast<std::ptrdiff_t>(2 * k - 1));
  return encode_list(out);
}

FunctionFamily RoundFunction::family() const {
  RoundFunction self = *this;
  return {"round(" + sampler.id + "," + std::to_string(rounds) + ")",
          [self](int lambda) { return self.k_bits() + self.sampler.seed_len(lambda); },
          [self](int lambda, const BitString& x) { return self.eval(lambda, x); },
          [self](int lambda) {
            return static_cast<std::uint64_t>(self.sampler.seed_len(lambda) + self.sampler.out_len(lambda) + 1);
          }};
}

RoundFunction round_function(const SeededSampler& s, std::size_t rounds) {
  if (rounds == 0) throw std::invalid_argument("round_function needs at least one round");
  return {s, rounds};
}

FunctionFamily puzzle_projection(const SeededSampler& s) {
  return {"projection(" + s.id + ")", s.seed_len,
          [s](int lambda, const BitString& r) { return decode_pair(s.eval(lambda, r)).first; },
          [s](int lambda) { return static_cast<std::uint64_t>(s.seed_len(lambda) + s.out_len(lambda) + 1); }};
}

std::string InverterSpec::name() const {
  switch (kind) {
    case InverterKind::Canonical:
      return "canonical";
    case InverterKind::Noisy:
      return "noisy(" + to_string(eta) + ")";
    case InverterKind::Fixed:
      return "fixed(" + fixed.str() + ")";
  }
  return "?";
}

Channel make_inverter(const FunctionFamily& f, const InverterSpec& spec) {
  if (spec.kind == InverterKind::Fixed) {
    BitString x = spec.fixed;
    return [x](int, const BitString&) { return ExactDistribution::point(x); };
  }
  auto cache = std::make_shared<std::map<int, std::map<BitString, std::vector<BitString>>>>();
  Rational eta = spec.kind == InverterKind::Noisy ? spec.eta : Rational(0);
  return [f, cache, eta](int lambda, const BitString& y) {
    auto it = cache->find(lambda);
    std::size_t n = f.in_len(lambda);
    if (it == cache->end()) {
      check_seed_space(n, limits().max_seed_space);
      std::map<BitString, std::vector<BitString>> pre;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitString x = BitString::from_uint(v, n);
        pre[f.eval(lambda, x)].push_back(x);
      }
      it = cache->emplace(lambda, std::move(pre)).first;
    }
    auto p = it->second.find(y);
    ExactDistribution uniform = ExactDistribution::uniform_bits(n);
    if (p == it->second.end()) return uniform;
    ExactDistribution canonical = ExactDistribution::uniform(p->second);
    return eta == 0 ? canonical : canonical.mix(uniform, eta);
  };
}

Rational fixed_k_distance(const RoundFunction& rf, const Channel& r, int lambda, std::size_t k) {
  std::size_t sl = rf.sampler.seed_len(lambda);
  check_seed_space(sl, limits().max_seed_space);
  BitString kbits = rf.k_encoding(k);
  Rational w = pow2(-static_cast<int>(sl));
  MassAccumulator ideal, attacked;
  std::map<BitString, ExactDistribution> cache;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << sl); ++v) {
    BitString x = kbits + BitString::from_uint(v, sl);
    BitString y = rf.eval(lambda, x);
    ideal.add(encode_pair(x, y), w);
    auto it = cache.find(y);
    if (it == cache.end()) it = cache.emplace(y, r(lambda, y)).first;
    for (const auto& [x2, p] : it->second.masses()) attacked.add(encode_pair(x2, y), w * p);
  }
  return statistical_distance(ideal.finish(), attacked.finish());
}

Party transcript_attack(const RoundFunction& rf, const Channel& inverter, const Party& counterparty) {
  Party b;
  b.id = "B_q(" + rf.sampler.id + " vs " + counterparty.id + ")";
  b.seed_dist = [](int) { return ExactDistribution(); };
  std::size_t l = rf.rounds;
  b.rounds = [l](int) { return l; };
  auto widths = std::make_shared<std::map<int, std::vector<std::size_t>>>();
  auto answer_width = [rf, widths](int lambda, std::size_t k) {
    auto it = widths->find(lambda);
    if (it == widths->end()) {
      auto msgs = sampler_transcript(rf.sampler, rf.rounds, lambda, BitString::zeros(rf.sampler.seed_len(lambda)));
      std::vector<std::size_t> w;
      for (std::size_t j = 0; j < rf.rounds; ++j) w.push_back(msgs[2 * j + 1].size());
      it = widths->emplace(lambda, std::move(w)).first;
    }
    return it->second.at(k - 1);
  };
  b.width = answer_width;
  b.next_message = [rf, inverter, answer_width](int lambda, const BitString&, const std::vector<BitString>& partial) {
    std::size_t k = (partial.size() + 1) / 2;
    std::size_t w = answer_width(lambda, k);
    std::vector<BitString> query{rf.k_encoding(k)};
    query.insert(query.end(), partial.begin(), partial.end());
    std::size_t kb = rf.k_bits(), in_len = kb + rf.sampler.seed_len(lambda);
    MassAccumulator acc;
    for (const auto& [x, p] : inverter(lambda, encode_list(query)).masses()) {
      if (x.size() != in_len)
        throw InverterRangeError("inverter returned " + std::to_string(x.size()) + " bits, domain has " +
                                 std::to_string(in_len));
      std::size_t k2 = static_cast<std::size_t>(x.prefix(kb).to_uint()) + 1;
      BitString a = BitString::zeros(w);
      if (k2 <= rf.rounds) {
        auto msgs = sampler_transcript(rf.sampler, rf.rounds, lambda, x.slice(kb, x.size() - kb));
        if (msgs[2 * k2 - 1].size() == w) a = msgs[2 * k2 - 1];
      }
      acc.add(a, p);
    }
    return acc.finish();
  };
  return b;
}

ExactDistribution hybrid_distribution(const Party& a, const Party& c, const Party& b_q, int lambda, std::size_t k) {
  Party mixed = a;
  mixed.id = "hybrid";
  mixed.next_message = [a, b_q, k](int lam, const BitString& seed, const std::vector<BitString>& partial) {
    std::size_t round = partial.size() / 2 + 1;
    return round < k ? a.next_message(lam, seed, partial) : b_q.next_message(lam, BitString(), partial);
  };
  return transcript_distribution(c, mixed, lambda);
}

GameReport hybrid_audit(const Party& a, const Party& c, const RoundFunction& rf, const Channel& inverter, int lambda,
                        const std::string& inverter_name) {
  GameReport r;
  r.lemma_tag = "transcript-attack-hybrids";
  std::size_t l = rf.rounds;
  r.inputs = {{"prover", a.id},
              {"counterparty", c.id},
              {"sampler", rf.sampler.id},
              {"inverter", inverter_name},
              {"rounds", std::to_string(l)},
              {"lambda", std::to_string(lambda)}};
  Party b_q = transcript_attack(rf, inverter, c);
  ExactDistribution real = transcript_distribution(c, a, lambda);
  ExactDistribution attacked = transcript_distribution(c, b_q, lambda);

  std::vector<ExactDistribution> d;
  for (std::size_t k = 1; k <= l + 1; ++k) d.push_back(hybrid_distribution(a, c, b_q, lambda, k));
  r.check("D_1 equals <B_q, C>", d.front() == attacked);
  r.check("D_(l+1) equals <A, C>", d.back() == real);

  Rational eps_s = statistical_distance(real, exact_pmf(rf.sampler, lambda));
  Rational eps_r = distowf_distance(rf.family(), inverter, lambda);
  Rational scale = pow2(static_cast<int>(rf.k_bits()));
  Rational eps_max = std::max(eps_s, eps_r);
  r.quantities["eps_S"] = eps_s;
  r.quantities["eps_R"] = eps_r;

  Rational sum_steps = 0;
  for (std::size_t k = 1; k <= l; ++k) {
    std::string ks = std::to_string(k);
    Rational eps_rk = fixed_k_distance(rf, inverter, lambda, k);
    Rational step = statistical_distance(d[k - 1], d[k]);
    sum_steps += step;
    r.quantities["eps_R_" + ks] = eps_rk;
    r.quantities["SD(D_" + ks + ",D_" + std::to_string(k + 1) + ")"] = step;
    r.check("fixed k = " + ks + ": eps_R_k <= 2^ceil(log l) eps_R", eps_rk, "<=", scale * eps_r);
    r.check("step " + ks + ": SD(D_k, D_k+1) <= 2 eps_S + eps_R_k", step, "<=", 2 * eps_s + eps_rk);
    r.check("step " + ks + ": SD(D_k, D_k+1) <= 2 eps_S + 2^ceil(log l) eps_R", step, "<=", 2 * eps_s + scale * eps_r);
    r.check("step " + ks + ": SD(D_k, D_k+1) <= (2l + 2) max(eps_S, eps_R)", step, "<=",
            Rational(static_cast<unsigned long>(2 * l + 2)) * eps_max);
  }
  Rational total = statistical_distance(attacked, real);
  r.quantities["SD(<A,C>,<B_q,C>)"] = total;
  r.check("total: SD(D_1, D_(l+1)) <= sum of steps", total, "<=", sum_steps);
  r.check("total: SD(D_1, D_(l+1)) <= l (2l + 2) max(eps_S, eps_R)", total, "<=",
          Rational(static_cast<unsigned long>(l * (2 * l + 2))) * eps_max);
  if (eps_s == 0 && eps_r == 0) r.check("perfect oracles: SD(<A,C>, <B_q,C>) == 0", total, "==", 0);
  return r;
}

Channel puzzle_attack(const SeededSampler& s, const Channel& inverter) {
  return [s, inverter](int lambda, const BitString& puzz) {
    std::size_t sl = s.seed_len(lambda);
    MassAccumulator acc;
    for (const auto& [r, p] : inverter(lambda, puzz).masses()) {
      if (r.size() != sl)
        throw InverterRangeError("inverter returned " + std::to_string(r.size()) + " bits, seed has " +
                                 std::to_string(sl));
      acc.add(decode_pair(s.eval(lambda, r)).second, p);
    }
    return acc.finish();
  };
}

GameReport puzzle_attack_audit(const OneWayPuzzle& puzzle, const SeededSampler& s, const Channel& inverter,
                               int lambda, const std::string& inverter_name) {
  GameReport r;
  r.lemma_tag = "puzzle-attack";
  r.inputs = {{"puzzle", puzzle.id}, {"sampler", s.id}, {"inverter", inverter_name}, {"lambda", std::to_string(lambda)}};
  Rational eps1 = statistical_distance(puzzle.samp(lambda), exact_pmf(s, lambda));
  Rational eps2 = distowf_distance(puzzle_projection(s), inverter, lambda);
  PuzzleGame g = puzzle_game(puzzle, puzzle_attack(s, inverter), lambda);
  r.quantities["eps_1"] = eps1;
  r.quantities["eps_2"] = eps2;
  r.quantities["correctness"] = g.correctness;
  r.quantities["success"] = g.success;
  r.check("success >= correctness - 2 eps_1 - eps_2", g.success, ">=", g.correctness - 2 * eps1 - eps2);
  if (eps1 == 0 && eps2 == 0) r.check("perfect oracles: success == correctness", g.success, "==", g.correctness);
  return r;
}

ExactDistribution shift_mass(const ExactDistribution& law, const Rational& eps, const BitString& target) {
  if (eps < 0 || eps > 1) throw std::invalid_argument("shift_mass: eps outside [0, 1]");
  if (law.mass(target) != 0) throw std::invalid_argument("shift_mass: target is in the support");
  if (eps == 0) return law;
  std::vector<std::pair<BitString, Rational>> order(law.masses().begin(), law.masses().end());
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  ExactDistribution::Map m = law.masses();
  Rational left = eps;
  for (const auto& [x, w] : order) {
    Rational take = std::min(w, left);
    m[x] -= take;
    left -= take;
    if (left == 0) break;
  }
  m[target] = eps;
  return ExactDistribution::from_masses(std::move(m));
}

namespace {

BitString flip(const BitString& s, std::size_t i) {
  return s.prefix(i) + BitString::from_uint(s[i] ? 0 : 1, 1) + s.slice(i + 1, s.size() - i - 1);
}

std::vector<BitString> by_mass(const ExactDistribution& law) {
  std::vector<std::pair<BitString, Rational>> order(law.masses().begin(), law.masses().end());
  std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.second > y.second; });
  std::vector<BitString> out;
  for (const auto& [x, _] : order) out.push_back(x);
  return out;
}

}  // namespace

BitString off_support_transcript(const ExactDistribution& transcripts) {
  for (const auto& t : by_mass(transcripts)) {
    auto msgs = decode_list(t);
    if (!msgs) continue;
    for (std::size_t j = msgs->size(); j-- > 0;)
      for (std::size_t i = (*msgs)[j].size(); i-- > 0;) {
        auto copy = *msgs;
        copy[j] = flip(copy[j], i);
        BitString c = encode_list(copy);
        if (transcripts.mass(c) == 0) return c;
      }
  }
  // Full support at this shape: lengthen the last message of the heaviest transcript.
  for (const auto& t : by_mass(transcripts)) {
    auto msgs = decode_list(t);
    if (!msgs || msgs->empty()) continue;
    msgs->back() = msgs->back() + BitString::zeros(1);
    BitString c = encode_list(*msgs);
    if (transcripts.mass(c) == 0) return c;
  }
  throw std::invalid_argument("no off-support transcript");
}

BitString off_support_pair(const ExactDistribution& pairs) {
  for (const auto& t : by_mass(pairs)) {
    auto [puzz, ans] = decode_pair(t);
    for (std::size_t i = ans.size(); i-- > 0;) {
      BitString c = encode_pair(puzz, flip(ans, i));
      if (pairs.mass(c) == 0) return c;
    }
  }
  throw std::invalid_argument("no off-support pair of the same shape");
}

}  // namespace pqlab
