#include "pqlab/corpus.hpp"

#include <algorithm>

namespace pqlab {

namespace {

SeededSampler fixed_sampler(std::string id, std::size_t seed, std::size_t out,
                            std::function<BitString(const BitString&)> g) {
  return {std::move(id), [seed](int) { return seed; }, [out](int) { return out; },
          [g](int, const BitString& s) { return g(s); }};
}

int count_ones(const BitString& s) {
  int c = 0;
  for (std::size_t i = 0; i < s.size(); ++i) c += s[i];
  return c;
}

BitString resize(const BitString& s, std::size_t w) {
  if (s.size() >= w) return s.prefix(w);
  return s + BitString::zeros(w - s.size());
}

FunctionFamily lambda_family(std::string id, std::function<BitString(const BitString&)> g) {
  return {std::move(id), [](int lambda) { return static_cast<std::size_t>(lambda); },
          [g](int, const BitString& x) { return g(x); },
          [](int lambda) { return static_cast<std::uint64_t>(lambda) * lambda; }};
}

FunctionFamily fixed_family(std::string id, std::function<BitString(const BitString&)> g) {
  return {std::move(id), [](int) { return std::size_t{0}; }, [g](int, const BitString& x) { return g(x); },
          [](int) { return std::uint64_t{1}; }};
}

[[noreturn]] void unknown(const std::string& kind, const std::string& id) {
  throw UnknownId("unknown " + kind + " id: " + id);
}

// Prover that echoes each verifier coin; rounds and widths follow the coins.
Party echo_prover(std::function<std::vector<std::size_t>(int)> widths) {
  Party p;
  p.id = "echo";
  p.seed_dist = [](int) { return ExactDistribution::point(BitString()); };
  p.rounds = [widths](int lambda) { return widths(lambda).size(); };
  p.width = [widths](int lambda, std::size_t k) { return widths(lambda).at(k - 1); };
  p.next_message = [](int, const BitString&, const std::vector<BitString>& partial) {
    return ExactDistribution::point(partial.back());
  };
  return p;
}

IVPoQ coin_base(std::string id, std::size_t rounds, std::function<bool(int, const std::vector<BitString>&)> v2,
                Rational completeness) {
  auto widths = [rounds](int) { return std::vector<std::size_t>(rounds, 1); };
  IVPoQ b;
  b.id = std::move(id);
  b.verifier1 = public_coin_verifier("coins", widths);
  b.prover = echo_prover(widths);
  b.verifier2 = std::move(v2);
  b.completeness = [completeness](int) { return completeness; };
  b.soundness = [](int) { return Rational(0); };
  b.public_coin = true;
  return b;
}

IVPoQ law_base(std::string id, Rational accept) {
  IVPoQ b;
  b.id = id;
  b.verifier1 = silent_verifier();
  b.prover = prover_from_law(id + "-prover",
                             [accept](int) {
                               return ExactDistribution::from_masses(
                                   {{BitString("1"), accept}, {BitString("0"), 1 - accept}});
                             },
                             [](int) { return std::size_t{1}; });
  b.verifier2 = [](int, const std::vector<BitString>& m) { return m.at(1) == BitString("1"); };
  b.completeness = [accept](int) { return accept; };
  b.soundness = [](int) { return Rational(1, 2); };
  b.public_coin = true;
  return b;
}

}  // namespace

const std::vector<std::string>& sampler_ids() {
  static const std::vector<std::string> ids{"uniform1", "maj3", "maj3-2", "skew2", "and-lambda"};
  return ids;
}

SeededSampler corpus_sampler(const std::string& id) {
  if (id == "uniform1") return fixed_sampler(id, 1, 1, [](const BitString& s) { return s; });
  if (id == "maj3")
    return fixed_sampler(id, 3, 1, [](const BitString& s) { return BitString::from_uint(count_ones(s) >= 2, 1); });
  if (id == "maj3-2")
    return fixed_sampler(id, 3, 2, [](const BitString& s) {
      int c = count_ones(s);
      return BitString::from_uint(c >= 2 ? 3 : (c == 0 ? 0 : 1), 2);
    });
  if (id == "skew2")
    return fixed_sampler(id, 3, 2, [](const BitString& s) { return s[2] ? s.prefix(2) : BitString::zeros(2); });
  if (id == "and-lambda")
    return {id, [](int lambda) { return static_cast<std::size_t>(lambda); }, [](int) { return std::size_t{1}; },
            [](int, const BitString& s) {
              return BitString::from_uint(count_ones(s) == static_cast<int>(s.size()), 1);
            }};
  unknown("sampler", id);
}

const std::vector<std::string>& cheater_ids() {
  static const std::vector<std::string> ids{"honest", "repeat", "uniform", "ones"};
  return ids;
}

SeededSampler corpus_cheater(const std::string& id, const SeededSampler& base, std::size_t n) {
  SeededSampler s;
  s.id = id + "(" + base.id + ",N=" + std::to_string(n) + ")";
  s.out_len = [base, n](int lambda) { return n * base.out_len(lambda); };
  if (id == "honest") {
    s.seed_len = [base, n](int lambda) { return n * base.seed_len(lambda); };
    s.eval = [base, n](int lambda, const BitString& seed) {
      std::size_t w = base.seed_len(lambda);
      BitString out;
      for (std::size_t i = 0; i < n; ++i) out.append(base.eval(lambda, seed.slice(i * w, w)));
      return out;
    };
  } else if (id == "repeat") {
    s.seed_len = base.seed_len;
    s.eval = [base, n](int lambda, const BitString& seed) {
      BitString y = base.eval(lambda, seed), out;
      for (std::size_t i = 0; i < n; ++i) out.append(y);
      return out;
    };
  } else if (id == "uniform") {
    s.seed_len = s.out_len;
    s.eval = [](int, const BitString& seed) { return seed; };
  } else if (id == "ones") {
    s.seed_len = [](int) { return std::size_t{0}; };
    s.eval = [base, n](int lambda, const BitString&) { return BitString::ones(n * base.out_len(lambda)); };
  } else {
    unknown("cheater", id);
  }
  return s;
}

const std::vector<std::string>& perturbation_ids() {
  static const std::vector<std::string> ids{"same", "mix-uniform", "shift", "uniform", "tilt"};
  return ids;
}

ExactDistribution corpus_perturbation(const std::string& id, const ExactDistribution& q, std::size_t width) {
  if (id == "same") return q;
  if (id == "uniform") return ExactDistribution::uniform_bits(width);
  if (id == "mix-uniform") return q.mix(ExactDistribution::uniform_bits(width), Rational(1, 4));
  if (id == "shift") {
    // Half the mass of the lightest outcome moves onto the heaviest one.
    auto m = q.masses();
    auto heavy = std::max_element(m.begin(), m.end(), [](auto& a, auto& b) { return a.second < b.second; });
    auto light = std::min_element(m.begin(), m.end(), [](auto& a, auto& b) { return a.second < b.second; });
    if (heavy == light) return q.mix(ExactDistribution::uniform_bits(width), Rational(1, 8));
    Rational d = light->second / 2;
    light->second -= d;
    heavy->second += d;
    return ExactDistribution::from_masses(m);
  }
  if (id == "tilt") {
    // Weight 2 on outcomes starting with 0, weight 1 otherwise, renormalized.
    ExactDistribution::Map m;
    Rational total = 0;
    for (const auto& [x, p] : q.masses()) {
      m[x] = p * (x.size() && x[0] == 0 ? 2 : 1);
      total += m[x];
    }
    for (auto& [x, p] : m) p /= total;
    return ExactDistribution::from_masses(m);
  }
  unknown("perturbation", id);
}

const std::vector<std::string>& function_ids() {
  static const std::vector<std::string> ids{"identity", "prefix", "parity", "const", "xor-adjacent", "sort"};
  return ids;
}

FunctionFamily corpus_function(const std::string& id) {
  if (id == "identity") return lambda_family(id, [](const BitString& x) { return x; });
  if (id == "prefix")
    return lambda_family(id, [](const BitString& x) { return x.prefix(x.size() ? x.size() - 1 : 0); });
  if (id == "parity")
    return lambda_family(id, [](const BitString& x) { return BitString::from_uint(count_ones(x) & 1, 1); });
  if (id == "const") return lambda_family(id, [](const BitString&) { return BitString::zeros(1); });
  if (id == "xor-adjacent")
    return lambda_family(id, [](const BitString& x) {
      BitString y;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) y.push_back(x[i] ^ x[i + 1]);
      return y;
    });
  if (id == "sort")
    return lambda_family(id, [](const BitString& x) {
      int c = count_ones(x);
      return BitString::zeros(x.size() - c) + BitString::ones(c);
    });
  unknown("function", id);
}

const std::vector<std::string>& owf_adversary_ids() {
  static const std::vector<std::string> ids{"canonical", "zeros", "uniform", "echo"};
  return ids;
}

Channel corpus_owf_adversary(const std::string& id, const FunctionFamily& f) {
  if (id == "canonical") {
    Channel inv = canonical_inverter(f);
    return [inv, f](int lambda, const BitString& y) {
      try {
        return inv(lambda, y);
      } catch (const EmptyPreimage&) {
        return ExactDistribution::point(BitString::zeros(f.in_len(lambda)));
      }
    };
  }
  if (id == "zeros")
    return [f](int lambda, const BitString&) { return ExactDistribution::point(BitString::zeros(f.in_len(lambda))); };
  if (id == "uniform")
    return [f](int lambda, const BitString&) { return ExactDistribution::uniform_bits(f.in_len(lambda)); };
  if (id == "echo")
    return [f](int lambda, const BitString& y) { return ExactDistribution::point(resize(y, f.in_len(lambda))); };
  unknown("adversary", id);
}

Channel puzzle_adversary_from_owf(const Channel& a) {
  return [a](int lambda, const BitString& puzz) {
    std::size_t n = 0;
    while (n < puzz.size() && puzz[n] == 1) ++n;
    BitString y = n < puzz.size() ? puzz.slice(n + 1, puzz.size() - n - 1) : BitString();
    return a(lambda, y);
  };
}

std::vector<std::string> puzzle_ids() {
  std::vector<std::string> ids{"coin", "lossy"};
  for (const auto& f : function_ids()) ids.push_back("owf:" + f);
  return ids;
}

OneWayPuzzle corpus_puzzle(const std::string& id) {
  if (id.rfind("owf:", 0) == 0) return owf_to_owpuzz(corpus_function(id.substr(4)));
  if (id == "coin") {
    // puzz = first bit of r, ans = r; any answer extending puzz is accepted.
    SeededSampler s = fixed_sampler("coin", 2, encode_pair(BitString::zeros(1), BitString::zeros(2)).size(), [](const BitString& r) { return encode_pair(r.prefix(1), r); });
    return puzzle_from_sampler(id, s, [](int, const BitString& puzz, const BitString& ans) {
      return ans.size() == 2 && puzz.size() == 1 && ans[0] == puzz[0];
    });
  }
  if (id == "lossy") {
    // puzz = r, ans = r; the verifier rejects the puzzle 11.
    SeededSampler s = fixed_sampler("lossy", 2, encode_pair(BitString::zeros(2), BitString::zeros(2)).size(), [](const BitString& r) { return encode_pair(r, r); });
    return puzzle_from_sampler(id, s, [](int, const BitString& puzz, const BitString& ans) {
      return puzz == ans && puzz != BitString("11");
    });
  }
  unknown("puzzle", id);
}

const std::vector<std::string>& toy_protocol_ids() {
  static const std::vector<std::string> ids{"echo1", "mix2"};
  return ids;
}

ToyProtocol corpus_toy_protocol(const std::string& id) {
  ToyProtocol t;
  if (id == "echo1") {
    t.rounds = 1;
    t.c = public_coin_verifier("coin1", [](int) { return std::vector<std::size_t>{1}; });
    t.a.id = "and-echo";
    t.a.seed_dist = [](int) { return ExactDistribution::uniform_bits(1); };
    t.a.rounds = [](int) { return std::size_t{1}; };
    t.a.width = [](int, std::size_t) { return std::size_t{1}; };
    t.a.next_message = [](int, const BitString& s, const std::vector<BitString>& p) {
      return ExactDistribution::point(BitString::from_uint(p[0][0] & s[0], 1));
    };
    return t;
  }
  if (id == "mix2") {
    t.rounds = 2;
    t.c = public_coin_verifier("coin2", [](int) { return std::vector<std::size_t>{1, 1}; });
    t.a.id = "xor-mix";
    t.a.seed_dist = [](int) { return ExactDistribution::uniform_bits(1); };
    t.a.rounds = [](int) { return std::size_t{2}; };
    t.a.width = [](int, std::size_t) { return std::size_t{1}; };
    t.a.next_message = [](int, const BitString& s, const std::vector<BitString>& p) {
      if (p.size() == 1) return ExactDistribution::point(p[0]);
      return ExactDistribution::point(BitString::from_uint(p[0][0] ^ p[2][0] ^ s[0], 1));
    };
    return t;
  }
  unknown("toy protocol", id);
}

const std::vector<std::string>& base_ids() {
  static const std::vector<std::string> ids{"always", "rej11", "empty", "advantage-uniform1",
                                            "nonint-9/10", "nonint-4/5", "private-coin"};
  return ids;
}

IVPoQ corpus_base(const std::string& id) {
  if (id == "always") return coin_base(id, 2, [](int, const std::vector<BitString>&) { return true; }, 1);
  if (id == "rej11")
    return coin_base(
        id, 2, [](int, const std::vector<BitString>& m) { return !(m.at(1)[0] && m.at(3)[0]); }, Rational(3, 4));
  if (id == "empty") return coin_base(id, 0, [](int, const std::vector<BitString>&) { return true; }, 1);
  if (id == "advantage-uniform1") {
    IVPoQ b = build_advantage_protocol(corpus_sampler("uniform1"), 1);
    b.id = id;
    return b;
  }
  if (id == "nonint-9/10") return law_base(id, Rational(9, 10));
  if (id == "nonint-4/5") return law_base(id, Rational(4, 5));
  if (id == "private-coin") {
    // The verifier sends the parity of two hidden coins; the prover echoes it.
    IVPoQ b = coin_base(id, 1, [](int, const std::vector<BitString>& m) { return m.at(0) == m.at(1); }, 1);
    b.verifier1.id = "hidden-parity";
    b.verifier1.seed_dist = [](int) { return ExactDistribution::uniform_bits(2); };
    b.verifier1.next_message = [](int, const BitString& s, const std::vector<BitString>&) {
      return ExactDistribution::point(BitString::from_uint(s[0] ^ s[1], 1));
    };
    b.public_coin = false;
    return b;
  }
  unknown("base", id);
}

const std::vector<std::string>& commit_ids() {
  static const std::vector<std::string> ids{"identity", "perm2", "xorfold", "const", "partial"};
  return ids;
}

CommitScheme corpus_commit(const std::string& id) {
  if (id == "identity") return toy_extractable_commitment(fixed_family("identity", [](const BitString& x) { return x; }), 1);
  if (id == "perm2")
    // x -> 5x + 3 mod 2^|x|, a bijection on every width.
    return toy_extractable_commitment(fixed_family("affine-5x+3",
                                                   [](const BitString& x) {
                                                     std::uint64_t mask = (std::uint64_t{1} << x.size()) - 1;
                                                     return BitString::from_uint((5 * x.to_uint() + 3) & mask,
                                                                                 x.size());
                                                   }),
                                      2);
  if (id == "xorfold")
    return toy_extractable_commitment(
        fixed_family("xor-fold", [](const BitString& x) { return BitString::from_uint(count_ones(x) & 1, 1); }), 1);
  if (id == "const")
    return toy_extractable_commitment(fixed_family("constant", [](const BitString&) { return BitString::zeros(1); }),
                                      1);
  if (id == "partial")
    // On m || r with one salt bit: (first bit of m AND r, first bit of m OR r), then the rest of m.
    return toy_extractable_commitment(fixed_family("and-or",
                                                   [](const BitString& x) {
                                                     std::size_t w = x.size() - 1;
                                                     int m0 = w ? x[0] : 0, r = x[w];
                                                     BitString head = BitString::from_uint(
                                                         ((m0 & r) << 1) | (m0 | r), 2);
                                                     return head + (w ? x.slice(1, w - 1) : BitString());
                                                   }),
                                      1);
  unknown("commit", id);
}

bool commit_is_perfectly_binding(const std::string& id) { return id == "identity" || id == "perm2"; }

const std::vector<std::string>& protocol_cheater_ids() {
  static const std::vector<std::string> ids{"honest", "zeros", "ones", "correlated", "echo"};
  return ids;
}

Party corpus_protocol_cheater(const std::string& id, const IVPoQ& scheme) {
  if (id == "honest") return scheme.prover;
  Party p;
  p.id = id;
  p.rounds = scheme.prover.rounds;
  p.width = scheme.prover.width;
  p.seed_dist = [](int) { return ExactDistribution::point(BitString()); };
  auto width = scheme.prover.width;
  if (id == "zeros") {
    p.next_message = [width](int lambda, const BitString&, const std::vector<BitString>& partial) {
      return ExactDistribution::point(BitString::zeros(width(lambda, partial.size() / 2 + 1)));
    };
  } else if (id == "ones") {
    p.next_message = [width](int lambda, const BitString&, const std::vector<BitString>& partial) {
      return ExactDistribution::point(BitString::ones(width(lambda, partial.size() / 2 + 1)));
    };
  } else if (id == "correlated") {
    p.seed_dist = [](int) { return ExactDistribution::uniform_bits(1); };
    p.next_message = [width](int lambda, const BitString& seed, const std::vector<BitString>& partial) {
      std::size_t w = width(lambda, partial.size() / 2 + 1);
      return ExactDistribution::point(seed[0] ? BitString::ones(w) : BitString::zeros(w));
    };
  } else if (id == "echo") {
    p.next_message = [width](int lambda, const BitString&, const std::vector<BitString>& partial) {
      return ExactDistribution::point(resize(partial.back(), width(lambda, partial.size() / 2 + 1)));
    };
  } else {
    unknown("protocol cheater", id);
  }
  return p;
}

const std::vector<std::string>& zk_cheater_ids() {
  static const std::vector<std::string> ids{"honest", "zeros", "ones", "correlated", "echo", "openable-junk", "mixed"};
  return ids;
}

Party corpus_zk_cheater(const std::string& id, const ZkIVPoQ& zk) {
  if (id == "openable-junk") {
    // Commits to all-ones messages with zero salt.
    Party p = corpus_protocol_cheater("zeros", zk.compiled);
    p.id = id;
    IVPoQ base = zk.base;
    CommitScheme c = zk.commit;
    p.next_message = [base, c](int lambda, const BitString&, const std::vector<BitString>& partial) {
      std::size_t w = base.prover.width(lambda, partial.size() / 2 + 1);
      return ExactDistribution::point(c.commit(lambda, BitString::ones(w), BitString::zeros(c.salt_width(lambda))));
    };
    return p;
  }
  if (id == "mixed") {
    // One extra seed bit chooses between the honest prover and all-zero commitments.
    Party honest = zk.compiled.prover;
    Party p = honest;
    p.id = id;
    p.seed_dist = [honest](int lambda) { return ExactDistribution::uniform_bits(1).product(honest.seed_dist(lambda)); };
    p.next_message = [honest](int lambda, const BitString& seed, const std::vector<BitString>& partial) {
      if (seed[0]) return honest.next_message(lambda, seed.slice(1, seed.size() - 1), partial);
      return ExactDistribution::point(BitString::zeros(honest.width(lambda, partial.size() / 2 + 1)));
    };
    return p;
  }
  return corpus_protocol_cheater(id, zk.compiled);
}

InverterSpec corpus_inverter(const std::string& kind, const Rational& eta, std::size_t fixed_width) {
  if (kind == "canonical") return {InverterKind::Canonical, 0, {}};
  if (kind == "noisy") return {InverterKind::Noisy, eta, {}};
  if (kind == "fixed") return {InverterKind::Fixed, 0, BitString::zeros(fixed_width)};
  unknown("inverter", kind);
}

}  // namespace pqlab
