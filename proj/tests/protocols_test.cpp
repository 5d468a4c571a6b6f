#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqlab/corpus.hpp"
#include "pqlab/protocols.hpp"
#include "pqlab/reductions.hpp"

using namespace pqlab;

namespace {

// One round; sends its seed bit.
Party coin_party(std::string id) {
  return {std::move(id), [](int) { return ExactDistribution::uniform_bits(1); }, [](int) { return std::size_t{1}; },
          [](int, std::size_t) { return std::size_t{1}; },
          [](int, const BitString& s, const std::vector<BitString>&) { return ExactDistribution::point(s); }};
}

IVPoQ mock(Party prover, Party verifier, std::function<bool(int, const std::vector<BitString>&)> v2) {
  IVPoQ s;
  s.id = "mock";
  s.prover = std::move(prover);
  s.verifier1 = std::move(verifier);
  s.verifier2 = std::move(v2);
  s.completeness = [](int) { return Rational(1); };
  s.soundness = [](int) { return Rational(0); };
  s.public_coin = true;
  return s;
}

}  // namespace

TEST_CASE("execution of fixed parties") {
  Party v = constant_party("v", 2, {BitString("1"), BitString("00")});
  Party p = constant_party("p", 2, {BitString("01"), BitString("")});
  Transcript t = execute(v, p, 2, BitString(), BitString());
  CHECK(t.messages == std::vector<BitString>{BitString("1"), BitString("01"), BitString("00"), BitString("")});
  auto e = t.entries();
  CHECK(e[0].first == 'V');
  CHECK(e[1].first == 'P');
  CHECK(Transcript::decode(2, t.encode()).messages == t.messages);
  auto d = transcript_distribution(v, p, 2);
  CHECK(d == ExactDistribution::point(t.encode()));
}

TEST_CASE("coin flips give the uniform transcript law") {
  auto d = transcript_distribution(coin_party("v"), coin_party("p"), 1);
  CHECK(d.size() == 4);
  for (const auto& [t, w] : d.masses()) CHECK(w == Rational(1, 4));
}

TEST_CASE("a sampler prover reproduces the sampler law") {
  SeededSampler s = corpus_sampler("skew2");
  auto d = transcript_distribution(silent_verifier(), prover_from_sampler(s), 2);
  auto want = exact_pmf(s, 2).map([](const BitString& y) { return encode_list({BitString(), y}); });
  CHECK(d == want);
}

TEST_CASE("width violations are errors") {
  Party v = constant_party("v", 1, {BitString("1")});
  Party bad = coin_party("p");
  bad.width = [](int, std::size_t) { return std::size_t{2}; };
  CHECK_THROWS_AS(execute(v, bad, 1, BitString(), BitString("0")), WidthViolation);
  CHECK_THROWS_AS(transcript_distribution(v, bad, 1), WidthViolation);
}

TEST_CASE("acceptance probability") {
  Party v = silent_verifier();
  Party p = coin_party("p");
  CHECK(ivpoq_accept_prob(mock(p, v, [](int, const std::vector<BitString>&) { return true; }), p, 1) == 1);
  CHECK(ivpoq_accept_prob(mock(p, v, [](int, const std::vector<BitString>&) { return false; }), p, 1) == 0);
  IVPoQ first_zero = mock(p, v, [](int, const std::vector<BitString>& m) { return m.at(1)[0] == 0; });
  CHECK(ivpoq_accept_prob(first_zero, p, 1) == Rational(1, 2));
}

TEST_CASE("public-coin detection") {
  CHECK(is_public_coin(public_coin_verifier("c", [](int) { return std::vector<std::size_t>{1, 2}; }), 2));
  CHECK(is_public_coin(silent_verifier(), 2));
  CHECK_FALSE(corpus_base("private-coin").public_coin);
  CHECK_FALSE(is_public_coin(corpus_base("private-coin").verifier1, 2));
}

TEST_CASE("AND composition of schemes") {
  IVPoQ a = corpus_base("nonint-9/10"), b = corpus_base("nonint-4/5");
  IVPoQ c = and_compose_ivpoq(a, b);
  CHECK(ivpoq_accept_prob(a, a.prover, 2) == Rational(9, 10));
  CHECK(ivpoq_accept_prob(b, b.prover, 2) == Rational(4, 5));
  CHECK(ivpoq_accept_prob(c, c.prover, 2) == Rational(18, 25));
  CHECK(c.completeness(2) == Rational(18, 25));
  IVPoQ one = and_compose_ivpoq(corpus_base("always"), corpus_base("always"));
  CHECK(ivpoq_accept_prob(one, one.prover, 2) == 1);
  // Split cheaters do at least as well on each factor.
  IVPoQ x = corpus_base("rej11"), y = corpus_base("always");
  IVPoQ xy = and_compose_ivpoq(x, y);
  for (const auto& id : protocol_cheater_ids()) {
    Party p = corpus_protocol_cheater(id, xy);
    Rational both = ivpoq_accept_prob(xy, p, 2);
    CAPTURE(id);
    CHECK(ivpoq_accept_prob(x, split_prover_first(x, p), 2) >= both);
    CHECK(ivpoq_accept_prob(y, split_prover_second(x, y, p), 2) >= both);
  }
}

TEST_CASE("AND composition of puzzles") {
  OneWayPuzzle a = corpus_puzzle("owf:identity"), b = corpus_puzzle("owf:parity");
  OneWayPuzzle ab = and_compose_owpuzz(a, b);
  Channel none = [](int, const BitString&) { return ExactDistribution::point(BitString()); };
  CHECK(puzzle_game(ab, none, 2).correctness == 1);
  OneWayPuzzle c = corpus_puzzle("lossy");
  CHECK(puzzle_game(and_compose_owpuzz(c, c), none, 2).correctness == Rational(9, 16));
}

TEST_CASE("interactive schemes as acceptance tests") {
  IVPoQ s = corpus_base("rej11");
  auto [v1, p] = ivpoq_to_intqas(s);
  ExactDistribution honest = transcript_distribution(v1, p, 2);
  Rational c = accept_prob(s, honest, 2);
  CHECK(c == Rational(3, 4));
  for (Rational eps : {Rational(0), Rational(1, 8), Rational(1, 4)}) {
    ExactDistribution mimic = shift_mass(honest, eps, off_support_transcript(honest));
    CHECK(statistical_distance(mimic, honest) == eps);
    CHECK(accept_prob(s, mimic, 2) >= c - eps);
  }
}

TEST_CASE("non-interactive schemes give puzzles") {
  for (const std::string id : {"nonint-9/10", "nonint-4/5", "advantage-uniform1"}) {
    IVPoQ s = corpus_base(id);
    OneWayPuzzle p = owpuzz_from_noninteractive_ivpoq(s);
    Channel none = [](int, const BitString&) { return ExactDistribution::point(BitString()); };
    CAPTURE(id);
    CHECK(puzzle_game(p, none, 2).correctness == ivpoq_accept_prob(s, s.prover, 2));
    // A malformed answer is rejected rather than handed to verifier2.
    CHECK(puzzle_game(p, none, 2).success == 0);
  }
  IVPoQ all = mock(coin_party("p"), silent_verifier(), [](int, const std::vector<BitString>&) { return true; });
  Channel none = [](int, const BitString&) { return ExactDistribution::point(BitString()); };
  CHECK(puzzle_game(owpuzz_from_noninteractive_ivpoq(all), none, 1).correctness == 1);
  CHECK_THROWS_AS(owpuzz_from_noninteractive_ivpoq(corpus_base("rej11")), NotNonInteractive);
  CHECK_THROWS_AS(owpuzz_from_noninteractive_ivpoq(corpus_base("always")), NotNonInteractive);
}
