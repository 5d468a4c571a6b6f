#include "pqlab/protocols.hpp"

#include <memory>

namespace pqlab {

std::size_t seed_width(const Party& p, int lambda) {
  const auto& m = p.seed_dist(lambda).masses();
  if (m.empty()) return 0;
  std::size_t w = m.begin()->first.size();
  for (const auto& [s, _] : m)
    if (s.size() != w) throw InvalidDistribution(p.id + ": seed law is not fixed-width");
  return w;
}

std::vector<std::pair<char, BitString>> Transcript::entries() const {
  std::vector<std::pair<char, BitString>> out;
  for (std::size_t i = 0; i < messages.size(); ++i) out.emplace_back(i % 2 == 0 ? 'V' : 'P', messages[i]);
  return out;
}

Transcript Transcript::decode(int lambda, const BitString& s) {
  auto msgs = decode_list(s);
  if (!msgs) throw MalformedTuple("not a transcript encoding: " + s.str());
  return {lambda, std::move(*msgs)};
}

namespace {

const Party& speaker(const Party& v, const Party& p, std::size_t idx) { return idx % 2 == 0 ? v : p; }

void check_width(const Party& party, int lambda, std::size_t round, const BitString& m) {
  std::size_t w = party.width(lambda, round);
  if (m.size() != w)
    throw WidthViolation(party.id + " sent " + std::to_string(m.size()) + " bits in round " + std::to_string(round) +
                         ", declared " + std::to_string(w));
}

// Branches over message randomness from `msgs` up to `upto` messages.
void walk(const Party& v, const Party& p, int lambda, const BitString& sv, const BitString& sp,
          std::vector<BitString>& msgs, std::size_t upto, const Rational& w,
          const std::function<void(const std::vector<BitString>&, const Rational&)>& leaf) {
  if (msgs.size() == upto) {
    leaf(msgs, w);
    return;
  }
  std::size_t idx = msgs.size();
  const Party& who = speaker(v, p, idx);
  ExactDistribution d = who.next_message(lambda, idx % 2 == 0 ? sv : sp, msgs);
  for (const auto& [m, q] : d.masses()) {
    check_width(who, lambda, idx / 2 + 1, m);
    msgs.push_back(m);
    walk(v, p, lambda, sv, sp, msgs, upto, w * q, leaf);
    msgs.pop_back();
  }
}

void for_each_run(const Party& v, const Party& p, int lambda, std::size_t upto,
                  const std::function<void(const BitString&, const BitString&, const std::vector<BitString>&,
                                           const Rational&)>& leaf) {
  ExactDistribution dv = v.seed_dist(lambda), dp = p.seed_dist(lambda);
  if (static_cast<std::uint64_t>(dv.size()) * dp.size() > limits().max_seed_space)
    throw BudgetExceeded("joint seed space " + std::to_string(dv.size()) + " x " + std::to_string(dp.size()) +
                         " exceeds cap");
  std::vector<BitString> msgs;
  for (const auto& [sv, wv] : dv.masses())
    for (const auto& [sp, wp] : dp.masses())
      walk(v, p, lambda, sv, sp, msgs, upto, wv * wp,
           [&](const std::vector<BitString>& m, const Rational& w) { leaf(sv, sp, m, w); });
}

}  // namespace

Transcript execute(const Party& verifier, const Party& prover, int lambda, const BitString& seed_v,
                   const BitString& seed_p) {
  if (seed_v.size() != seed_width(verifier, lambda) || seed_p.size() != seed_width(prover, lambda))
    throw WidthViolation("seed length differs from the declared seed width");
  Transcript t{lambda, {}};
  std::size_t total = 2 * verifier.rounds(lambda);
  while (t.messages.size() < total) {
    std::size_t idx = t.messages.size();
    const Party& who = speaker(verifier, prover, idx);
    ExactDistribution d = who.next_message(lambda, idx % 2 == 0 ? seed_v : seed_p, t.messages);
    if (!d.is_point()) throw std::invalid_argument(who.id + " draws fresh randomness; execute needs it in the seed");
    const BitString& m = d.masses().begin()->first;
    check_width(who, lambda, idx / 2 + 1, m);
    t.messages.push_back(m);
  }
  return t;
}

ExactDistribution transcript_distribution(const Party& verifier, const Party& prover, int lambda) {
  MassAccumulator acc;
  for_each_run(verifier, prover, lambda, 2 * verifier.rounds(lambda),
               [&](const BitString&, const BitString&, const std::vector<BitString>& m, const Rational& w) {
                 acc.add(encode_list(m), w);
               });
  return acc.finish();
}

Rational accept_prob(const IVPoQ& scheme, const ExactDistribution& transcripts, int lambda) {
  Rational a = 0;
  for (const auto& [t, w] : transcripts.masses()) {
    auto msgs = decode_list(t);
    if (msgs && scheme.verifier2(lambda, *msgs)) a += w;
  }
  return a;
}

Rational ivpoq_accept_prob(const IVPoQ& scheme, const Party& prover, int lambda) {
  return accept_prob(scheme, transcript_distribution(scheme.verifier1, prover, lambda), lambda);
}

Party constant_party(std::string id, std::size_t rounds, std::vector<BitString> messages) {
  auto msgs = std::make_shared<std::vector<BitString>>(std::move(messages));
  return {std::move(id), [](int) { return ExactDistribution(); }, [rounds](int) { return rounds; },
          [msgs](int, std::size_t k) { return (*msgs).at(k - 1).size(); },
          [msgs](int, const BitString&, const std::vector<BitString>& partial) {
            return ExactDistribution::point((*msgs).at(partial.size() / 2));
          }};
}

Party public_coin_verifier(std::string id, std::function<std::vector<std::size_t>(int)> widths) {
  Party p;
  p.id = std::move(id);
  p.seed_dist = [widths](int lambda) {
    std::size_t total = 0;
    for (auto w : widths(lambda)) total += w;
    return ExactDistribution::uniform_bits(total);
  };
  p.rounds = [widths](int lambda) { return widths(lambda).size(); };
  p.width = [widths](int lambda, std::size_t k) { return widths(lambda).at(k - 1); };
  p.next_message = [widths](int lambda, const BitString& seed, const std::vector<BitString>& partial) {
    auto ws = widths(lambda);
    std::size_t k = partial.size() / 2, off = 0;
    for (std::size_t i = 0; i < k; ++i) off += ws[i];
    return ExactDistribution::point(seed.slice(off, ws.at(k)));
  };
  return p;
}

Party prover_from_law(std::string id, std::function<ExactDistribution(int)> law,
                      std::function<std::size_t(int)> out_len) {
  return {std::move(id), std::move(law), [](int) { return std::size_t{1}; },
          [out_len](int lambda, std::size_t) { return out_len(lambda); },
          [](int, const BitString& seed, const std::vector<BitString>&) { return ExactDistribution::point(seed); }};
}

Party prover_from_sampler(const SeededSampler& s) {
  Party p;
  p.id = s.id;
  p.seed_dist = [s](int lambda) { return ExactDistribution::uniform_bits(s.seed_len(lambda)); };
  p.rounds = [](int) { return std::size_t{1}; };
  p.width = [s](int lambda, std::size_t) { return s.out_len(lambda); };
  p.next_message = [s](int lambda, const BitString& seed, const std::vector<BitString>&) {
    return ExactDistribution::point(s.eval(lambda, seed));
  };
  return p;
}

Party silent_verifier() {
  return public_coin_verifier("silent", [](int) { return std::vector<std::size_t>{0}; });
}

bool is_public_coin(const Party& verifier, int lambda) {
  std::size_t l = verifier.rounds(lambda), total = 0;
  for (std::size_t k = 1; k <= l; ++k) total += verifier.width(lambda, k);
  if (verifier.seed_dist(lambda) != ExactDistribution::uniform_bits(total)) return false;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << total); ++v) {
    BitString seed = BitString::from_uint(v, total);
    std::vector<BitString> partial;
    std::size_t off = 0;
    for (std::size_t k = 1; k <= l; ++k) {
      std::size_t w = verifier.width(lambda, k);
      ExactDistribution d = verifier.next_message(lambda, seed, partial);
      if (d != ExactDistribution::point(seed.slice(off, w))) return false;
      off += w;
      partial.push_back(seed.slice(off - w, w));
      partial.push_back(BitString());
    }
  }
  return true;
}

namespace {

Party sequential(const Party& a, const Party& b, std::string id) {
  Party p;
  p.id = std::move(id);
  p.seed_dist = [a, b](int lambda) { return a.seed_dist(lambda).product(b.seed_dist(lambda)); };
  p.rounds = [a, b](int lambda) { return a.rounds(lambda) + b.rounds(lambda); };
  p.width = [a, b](int lambda, std::size_t k) {
    std::size_t la = a.rounds(lambda);
    return k <= la ? a.width(lambda, k) : b.width(lambda, k - la);
  };
  p.next_message = [a, b](int lambda, const BitString& seed, const std::vector<BitString>& partial) {
    std::size_t la = a.rounds(lambda), wa = seed_width(a, lambda);
    if (partial.size() < 2 * la) return a.next_message(lambda, seed.prefix(wa), partial);
    std::vector<BitString> rest(partial.begin() + static_cast<std::ptrdiff_t>(2 * la), partial.end());
    return b.next_message(lambda, seed.slice(wa, seed.size() - wa), rest);
  };
  return p;
}

}  // namespace

IVPoQ and_compose_ivpoq(const IVPoQ& a, const IVPoQ& b) {
  IVPoQ c;
  c.id = "and(" + a.id + "," + b.id + ")";
  c.prover = sequential(a.prover, b.prover, "and(" + a.prover.id + "," + b.prover.id + ")");
  c.verifier1 = sequential(a.verifier1, b.verifier1, "and(" + a.verifier1.id + "," + b.verifier1.id + ")");
  auto va = a.verifier1;
  auto a2 = a.verifier2, b2 = b.verifier2;
  c.verifier2 = [va, a2, b2](int lambda, const std::vector<BitString>& msgs) {
    std::size_t cut = 2 * va.rounds(lambda);
    if (msgs.size() < cut) return false;
    std::vector<BitString> ma(msgs.begin(), msgs.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<BitString> mb(msgs.begin() + static_cast<std::ptrdiff_t>(cut), msgs.end());
    return a2(lambda, ma) && b2(lambda, mb);
  };
  auto ca = a.completeness, cb = b.completeness;
  c.completeness = [ca, cb](int lambda) { return Rational(ca(lambda) * cb(lambda)); };
  auto sa = a.soundness, sb = b.soundness;
  c.soundness = [sa, sb](int lambda) { return Rational(std::min(sa(lambda), sb(lambda))); };
  c.sigma = a.sigma.intersect(b.sigma);
  c.public_coin = a.public_coin && b.public_coin;
  return c;
}

Party split_prover_first(const IVPoQ& a, const Party& p_star) {
  Party p = p_star;
  p.id = "first-part(" + p_star.id + ")";
  p.rounds = a.verifier1.rounds;
  return p;
}

Party split_prover_second(const IVPoQ& a, const IVPoQ& b, const Party& p_star) {
  Party p;
  p.id = "second-part(" + p_star.id + ")";
  Party va = a.verifier1;
  p.seed_dist = [va, p_star](int lambda) {
    MassAccumulator acc;
    for_each_run(va, p_star, lambda, 2 * va.rounds(lambda),
                 [&](const BitString&, const BitString& sp, const std::vector<BitString>& m, const Rational& w) {
                   acc.add(encode_pair(sp, encode_list(m)), w);
                 });
    return acc.finish();
  };
  p.rounds = b.verifier1.rounds;
  p.width = [va, p_star](int lambda, std::size_t k) { return p_star.width(lambda, va.rounds(lambda) + k); };
  p.next_message = [p_star](int lambda, const BitString& seed, const std::vector<BitString>& partial) {
    auto [sp, ta] = decode_pair(seed);
    std::vector<BitString> full = *decode_list(ta);
    full.insert(full.end(), partial.begin(), partial.end());
    return p_star.next_message(lambda, sp, full);
  };
  return p;
}

namespace {

std::optional<std::pair<BitString, BitString>> try_decode_pair(const BitString& s) {
  std::size_t pos = 0;
  auto a = decode_prefixed(s, pos);
  if (!a) return std::nullopt;
  auto b = decode_prefixed(s, pos);
  if (!b || pos != s.size()) return std::nullopt;
  return std::make_pair(*a, *b);
}

}  // namespace

OneWayPuzzle and_compose_owpuzz(const OneWayPuzzle& a, const OneWayPuzzle& b) {
  OneWayPuzzle c;
  c.id = "and(" + a.id + "," + b.id + ")";
  c.samp = [a, b](int lambda) {
    MassAccumulator acc;
    ExactDistribution db = b.samp(lambda);
    for (const auto& [pa, wa] : a.samp(lambda).masses()) {
      auto [za, xa] = decode_pair(pa);
      for (const auto& [pb, wb] : db.masses()) {
        auto [zb, xb] = decode_pair(pb);
        acc.add(encode_pair(encode_pair(za, zb), encode_pair(xa, xb)), wa * wb);
      }
    }
    return acc.finish();
  };
  c.ver = [a, b](int lambda, const BitString& puzz, const BitString& ans) {
    auto z = try_decode_pair(puzz);
    auto x = try_decode_pair(ans);
    if (!z || !x) return false;
    return a.ver(lambda, z->first, x->first) && b.ver(lambda, z->second, x->second);
  };
  return c;
}

namespace {

Channel split_puzzle(const OneWayPuzzle& other, const Channel& adv, bool own_first) {
  return [other, adv, own_first](int lambda, const BitString& puzz) {
    MassAccumulator acc;
    for (const auto& [po, wo] : other.samp(lambda).masses()) {
      BitString zo = decode_pair(po).first;
      BitString composite = own_first ? encode_pair(puzz, zo) : encode_pair(zo, puzz);
      for (const auto& [ans, q] : adv(lambda, composite).masses()) {
        auto x = try_decode_pair(ans);
        acc.add(x ? (own_first ? x->first : x->second) : BitString(), wo * q);
      }
    }
    return acc.finish();
  };
}

}  // namespace

Channel split_puzzle_adversary_first(const OneWayPuzzle& b, const Channel& adv) { return split_puzzle(b, adv, true); }
Channel split_puzzle_adversary_second(const OneWayPuzzle& a, const Channel& adv) {
  return split_puzzle(a, adv, false);
}

std::pair<Party, Party> ivpoq_to_intqas(const IVPoQ& scheme) { return {scheme.verifier1, scheme.prover}; }

namespace {

void require_noninteractive(const IVPoQ& s, int lambda) {
  if (s.verifier1.rounds(lambda) != 1 || s.verifier1.width(lambda, 1) != 0)
    throw NotNonInteractive(s.id + " has verifier messages at lambda " + std::to_string(lambda));
}

}  // namespace

OneWayPuzzle owpuzz_from_noninteractive_ivpoq(const IVPoQ& scheme) {
  require_noninteractive(scheme, 1);
  OneWayPuzzle p;
  p.id = "owpuzz(" + scheme.id + ")";
  p.samp = [scheme](int lambda) {
    require_noninteractive(scheme, lambda);
    BitString puzz = BitString::ones(static_cast<std::size_t>(lambda));
    return transcript_distribution(scheme.verifier1, scheme.prover, lambda).map([&](const BitString& t) {
      return encode_pair(puzz, t);
    });
  };
  p.ver = [scheme](int lambda, const BitString& puzz, const BitString& ans) {
    if (puzz != BitString::ones(static_cast<std::size_t>(lambda))) return false;
    // Only transcripts of the honest shape reach verifier2.
    auto msgs = decode_list(ans);
    if (!msgs || msgs->size() != 2 || !(*msgs)[0].empty()) return false;
    if ((*msgs)[1].size() != scheme.prover.width(lambda, 1)) return false;
    return scheme.verifier2(lambda, *msgs);
  };
  return p;
}

}  // namespace pqlab
