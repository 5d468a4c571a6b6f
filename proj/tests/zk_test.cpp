#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqlab/corpus.hpp"
#include "pqlab/zk.hpp"

using namespace pqlab;

namespace {

// All (message, salt) pairs behind each commitment at message width w.
std::map<BitString, std::set<BitString>> oracle_openings(const CommitScheme& c, int lambda, std::size_t w) {
  std::map<BitString, std::set<BitString>> out;
  std::size_t s = c.salt_width(lambda);
  for (std::uint64_t mv = 0; mv < (std::uint64_t{1} << w); ++mv)
    for (std::uint64_t sv = 0; sv < (std::uint64_t{1} << s); ++sv) {
      BitString m = BitString::from_uint(mv, w);
      out[c.commit(lambda, m, BitString::from_uint(sv, s))].insert(m);
    }
  return out;
}

Rational oracle_hiding(const CommitScheme& c, int lambda, std::size_t w) {
  Rational worst = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << w); ++a)
    for (std::uint64_t b = a + 1; b < (std::uint64_t{1} << w); ++b)
      worst = std::max(worst, statistical_distance(c.commitment_law(lambda, BitString::from_uint(a, w)),
                                                   c.commitment_law(lambda, BitString::from_uint(b, w))));
  return worst;
}

SeededSampler point_sampler(const BitString& t) {
  return {"point", [](int) { return std::size_t{0}; }, [t](int) { return t.size(); },
          [t](int, const BitString&) { return t; }};
}

}  // namespace

TEST_CASE("commitments against brute force") {
  for (const auto& id : commit_ids()) {
    CommitScheme c = corpus_commit(id);
    for (std::size_t w : {1u, 2u}) {
      auto table = oracle_openings(c, 2, w);
      bool binding = true;
      for (const auto& [com, ms] : table) {
        CAPTURE(id);
        CHECK(c.extract(2, w, com) == std::optional<BitString>(*ms.begin()));
        if (ms.size() == 1)
          CHECK(c.val(2, w, com) == std::optional<BitString>(*ms.begin()));
        else
          CHECK_FALSE(c.val(2, w, com));
        binding = binding && ms.size() == 1;
      }
      CHECK(binding == c.binding_failures(2, w).empty());
      CHECK(binding == commit_is_perfectly_binding(id));
      CHECK(c.hiding_distance(2, w) == oracle_hiding(c, 2, w));
      GameReport rep = commitment_audit(c, 2, w);
      CHECK(rep.all_pass());
    }
  }
  CHECK(corpus_commit("identity").hiding_distance(2, 1) == 1);
  CHECK(corpus_commit("const").hiding_distance(2, 2) == 0);
  CHECK(corpus_commit("xorfold").hiding_distance(2, 1) == 0);
  CHECK(corpus_commit("partial").hiding_distance(2, 1) == Rational(1, 2));
  // Nothing opens to a commitment outside the image.
  CHECK_FALSE(corpus_commit("identity").extract(2, 1, BitString("111")));
}

TEST_CASE("compiled completeness") {
  ZkIVPoQ a = compile_zk(corpus_base("always"), corpus_commit("identity"));
  CHECK(ivpoq_accept_prob(a.compiled, a.compiled.prover, 2) == 1);
  CHECK(a.compiled.public_coin);
  ZkIVPoQ r = compile_zk(corpus_base("rej11"), corpus_commit("perm2"));
  CHECK(ivpoq_accept_prob(r.compiled, r.compiled.prover, 2) == Rational(3, 4));
  CHECK(binding_failure_acceptance(r, 2) == 0);
  // Salt 1 makes "01" ambiguous, so each round opens with probability 1/2.
  ZkIVPoQ p = compile_zk(corpus_base("rej11"), corpus_commit("partial"));
  Rational beta = binding_failure_acceptance(p, 2);
  CHECK(beta == Rational(9, 16));
  CHECK(ivpoq_accept_prob(p.compiled, p.compiled.prover, 2) == Rational(3, 16));
  GameReport rep = compiler_completeness_audit(p, 2);
  CHECK(rep.all_pass());
  CHECK(rep.quantities.at("compiled_acceptance") >= Rational(3, 4) - beta);
  // Every message opens a constant commitment, so val is always bottom.
  ZkIVPoQ k = compile_zk(corpus_base("always"), corpus_commit("const"));
  CHECK(ivpoq_accept_prob(k.compiled, k.compiled.prover, 2) == 0);
  CHECK(binding_failure_acceptance(k, 2) == 1);
  for (const auto& b : {"always", "rej11", "empty", "advantage-uniform1"})
    for (const auto& c : commit_ids()) CHECK(compiler_completeness_audit(compile_zk(corpus_base(b), corpus_commit(c)), 2).all_pass());
}

TEST_CASE("private coins are refused") {
  CHECK_THROWS_AS(compile_zk(corpus_base("private-coin"), corpus_commit("identity")), NotPublicCoin);
}

TEST_CASE("honest-verifier simulator") {
  ZkIVPoQ k = compile_zk(corpus_base("rej11"), corpus_commit("const"));
  GameReport rk = simulator_audit(k, 2);
  CHECK(rk.all_pass());
  CHECK(rk.quantities.at("SD(view,sim)") == 0);
  ZkIVPoQ x = compile_zk(corpus_base("rej11"), corpus_commit("xorfold"));
  CHECK(simulator_audit(x, 2).quantities.at("SD(view,sim)") == 0);
  ZkIVPoQ e = compile_zk(corpus_base("empty"), corpus_commit("identity"));
  CHECK(simulator_audit(e, 2).quantities.at("SD(view,sim)") == 0);
  ZkIVPoQ i = compile_zk(corpus_base("rej11"), corpus_commit("identity"));
  GameReport ri = simulator_audit(i, 2);
  CHECK(ri.all_pass());
  CHECK(ri.quantities.at("SD(view,sim)") <= 2);
  CHECK(ri.quantities.at("SD(view,sim)") ==
        statistical_distance(transcript_distribution(i.compiled.verifier1, i.compiled.prover, 2),
                             exact_pmf(hv_simulator(i), 2)));
}

TEST_CASE("transcript premise") {
  ZkIVPoQ i = compile_zk(corpus_base("rej11"), corpus_commit("identity"));
  ExactDistribution view = transcript_distribution(i.compiled.verifier1, i.compiled.prover, 2);
  BitString t = view.masses().begin()->first;
  GameReport r = hvszk_transcript_premise_check(i.compiled, point_sampler(t), 2);
  CHECK(r.all_pass());
  CHECK(r.quantities.at("SD(transcript,simulator)") == 1 - view.mass(t));
  GameReport s = hvszk_transcript_premise_check(i.compiled, hv_simulator(i), 2);
  CHECK(s.quantities.at("SD(transcript,simulator)") == simulator_audit(i, 2).quantities.at("SD(view,sim)"));
}

TEST_CASE("hybrid provers") {
  ZkIVPoQ z = compile_zk(corpus_base("rej11"), corpus_commit("identity"));
  Party honest = corpus_zk_cheater("honest", z);
  for (std::size_t j = 0; j <= 2; ++j) CHECK(hybrid_acceptance(z, honest, 2, j) == Rational(3, 4));
  // All-ones messages make the base verifier reject.
  Party junk = corpus_zk_cheater("openable-junk", z);
  CHECK(ivpoq_accept_prob(z.compiled, junk, 2) == 0);
  for (std::size_t j = 0; j <= 2; ++j) CHECK(hybrid_acceptance(z, junk, 2, j) == 0);
  for (const auto& b : {"always", "rej11", "advantage-uniform1"})
    for (const auto& c : commit_ids()) {
      ZkIVPoQ zk = compile_zk(corpus_base(b), corpus_commit(c));
      for (const auto& id : zk_cheater_ids()) {
        Party p = corpus_zk_cheater(id, zk);
        GameReport r = hybrid_provers_audit(zk, p, 2);
        CAPTURE(b);
        CAPTURE(c);
        CAPTURE(id);
        CHECK(r.all_pass());
        CHECK(r.quantities.at("acc_0") == ivpoq_accept_prob(zk.compiled, p, 2));
        if (commit_is_perfectly_binding(c))
          for (std::size_t j = 1; j <= zk.base.verifier1.rounds(2); ++j)
            CHECK(r.quantities.at("disc_" + std::to_string(j)) == 0);
      }
    }
}
