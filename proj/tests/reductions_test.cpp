#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqlab/corpus.hpp"
#include "pqlab/reductions.hpp"

using namespace pqlab;

namespace {

SeededSampler exact_transcripts(const ToyProtocol& t, int lambda) {
  ExactDistribution law = transcript_distribution(t.c, t.a, lambda);
  return sampler_from_dyadic("S", [law](int) { return law; });
}

SeededSampler shifted_transcripts(const ToyProtocol& t, int lambda, const Rational& eps) {
  ExactDistribution law = transcript_distribution(t.c, t.a, lambda);
  ExactDistribution s = shift_mass(law, eps, off_support_transcript(law));
  return sampler_from_dyadic("S", [s](int) { return s; });
}

}  // namespace

TEST_CASE("round function") {
  ToyProtocol t = corpus_toy_protocol("mix2");
  SeededSampler s = exact_transcripts(t, 2);
  RoundFunction rf = round_function(s, 2);
  CHECK(rf.k_bits() == 1);
  CHECK(rf.k_encoding(2).str() == "1");
  BitString r = BitString::zeros(s.seed_len(2));
  auto msgs = sampler_transcript(s, 2, 2, r);
  REQUIRE(msgs.size() == 4);
  CHECK(rf.eval(2, BitString("0") + r) == encode_list({BitString("0"), msgs[0]}));
  CHECK(rf.eval(2, BitString("1") + r) == encode_list({BitString("1"), msgs[0], msgs[1], msgs[2]}));
  RoundFunction three = round_function(s, 3);
  CHECK(three.k_bits() == 2);
  CHECK_THROWS(round_function(s, 0));
}

TEST_CASE("inverters") {
  FunctionFamily xf{"xor", [](int) { return std::size_t{2}; },
                    [](int, const BitString& x) { return BitString::from_uint(x[0] ^ x[1], 1); },
                    [](int) { return std::uint64_t{1}; }};
  Channel canon = make_inverter(xf, InverterSpec{InverterKind::Canonical, 0, {}});
  CHECK(canon(1, BitString("1")) == ExactDistribution::uniform({BitString("01"), BitString("10")}));
  // Off the image: uniform over the domain.
  CHECK(canon(1, BitString("11")) == ExactDistribution::uniform_bits(2));
  Channel noisy = make_inverter(xf, InverterSpec{InverterKind::Noisy, Rational(1, 4), {}});
  CHECK(noisy(1, BitString("1")).mass(BitString("01")) == Rational(3, 8) + Rational(1, 16));
  Channel fixed = make_inverter(xf, InverterSpec{InverterKind::Fixed, 0, BitString("11")});
  CHECK(fixed(1, BitString("1")) == ExactDistribution::point(BitString("11")));
}

TEST_CASE("perfect oracles reproduce the transcript law") {
  for (const auto& id : toy_protocol_ids()) {
    ToyProtocol t = corpus_toy_protocol(id);
    SeededSampler s = exact_transcripts(t, 2);
    RoundFunction rf = round_function(s, t.rounds);
    Channel r = make_inverter(rf.family(), InverterSpec{});
    for (std::size_t k = 1; k <= t.rounds; ++k) CHECK(fixed_k_distance(rf, r, 2, k) == 0);
    Party b = transcript_attack(rf, r, t.c);
    CAPTURE(id);
    CHECK(transcript_distribution(t.c, b, 2) == transcript_distribution(t.c, t.a, 2));
    GameReport rep = hybrid_audit(t.a, t.c, rf, r, 2, "canonical");
    CHECK(rep.all_pass());
    CHECK(rep.quantities.at("SD(<A,C>,<B_q,C>)") == 0);
  }
}

TEST_CASE("hybrid endpoints and bounds") {
  ToyProtocol t = corpus_toy_protocol("mix2");
  SeededSampler s = shifted_transcripts(t, 2, Rational(1, 8));
  RoundFunction rf = round_function(s, 2);
  Channel r = make_inverter(rf.family(), InverterSpec{});
  Party b = transcript_attack(rf, r, t.c);
  ExactDistribution real = transcript_distribution(t.c, t.a, 2);
  CHECK(hybrid_distribution(t.a, t.c, b, 2, 3) == real);
  CHECK(hybrid_distribution(t.a, t.c, b, 2, 1) == transcript_distribution(t.c, b, 2));
  Rational total = statistical_distance(real, transcript_distribution(t.c, b, 2));
  CHECK(total <= Rational(2 * (2 * 2 + 2), 8));
  GameReport rep = hybrid_audit(t.a, t.c, rf, r, 2, "canonical");
  CHECK(rep.all_pass());
  CHECK(rep.quantities.at("SD(<A,C>,<B_q,C>)") == total);
  CHECK(rep.quantities.at("eps_S") == Rational(1, 8));
}

TEST_CASE("fixed wrong inverter") {
  ToyProtocol t = corpus_toy_protocol("echo1");
  SeededSampler s = exact_transcripts(t, 2);
  RoundFunction rf = round_function(s, 1);
  Channel r = make_inverter(rf.family(), InverterSpec{InverterKind::Fixed, 0, BitString::ones(rf.family().in_len(2))});
  Party b = transcript_attack(rf, r, t.c);
  GameReport rep = hybrid_audit(t.a, t.c, rf, r, 2, "fixed");
  CHECK(rep.all_pass());
  CHECK(rep.quantities.at("SD(<A,C>,<B_q,C>)") ==
        statistical_distance(transcript_distribution(t.c, t.a, 2), transcript_distribution(t.c, b, 2)));
  Channel short_r = [](int, const BitString&) { return ExactDistribution::point(BitString("1")); };
  CHECK_THROWS_AS(transcript_distribution(t.c, transcript_attack(rf, short_r, t.c), 2), InverterRangeError);
}

TEST_CASE("puzzle attack") {
  OneWayPuzzle p = corpus_puzzle("coin");
  ExactDistribution law = p.samp(2);
  SeededSampler s = sampler_from_dyadic("S", [law](int) { return law; });
  Channel r = make_inverter(puzzle_projection(s), InverterSpec{});
  PuzzleGame g = puzzle_game(p, puzzle_attack(s, r), 2);
  CHECK(g.success == g.correctness);
  CHECK(puzzle_attack_audit(p, s, r, 2, "canonical").all_pass());
  // Constant seed 00: answer 00 solves exactly the puzzles starting with 0.
  Channel zero = [&](int, const BitString&) { return ExactDistribution::point(BitString::zeros(s.seed_len(2))); };
  CHECK(puzzle_game(p, puzzle_attack(s, zero), 2).success == Rational(1, 2));
  CHECK(puzzle_attack_audit(p, s, zero, 2, "fixed").all_pass());
  for (Rational eps : {Rational(1, 8), Rational(1, 4)}) {
    ExactDistribution shifted = shift_mass(law, eps, off_support_pair(law));
    SeededSampler s2 = sampler_from_dyadic("S", [shifted](int) { return shifted; });
    Channel r2 = make_inverter(puzzle_projection(s2), InverterSpec{InverterKind::Noisy, Rational(1, 4), {}});
    CHECK(puzzle_attack_audit(p, s2, r2, 2, "noisy").all_pass());
  }
}

TEST_CASE("mass shifting") {
  ExactDistribution law = ExactDistribution::from_masses(
      {{BitString("00"), Rational(1, 2)}, {BitString("01"), Rational(1, 4)}, {BitString("10"), Rational(1, 4)}});
  for (Rational eps : {Rational(0), Rational(1, 8), Rational(1, 2)}) {
    ExactDistribution s = shift_mass(law, eps, BitString("11"));
    CHECK(statistical_distance(law, s) == eps);
    CHECK(s.mass(BitString("11")) == eps);
  }
  CHECK_THROWS(shift_mass(law, Rational(1, 8), BitString("00")));
  CHECK(law.mass(off_support_transcript(ExactDistribution::point(encode_list({BitString("1")})))) == 0);
  ExactDistribution full = ExactDistribution::uniform({encode_list({BitString("0")}), encode_list({BitString("1")})});
  CHECK(full.mass(off_support_transcript(full)) == 0);
}
