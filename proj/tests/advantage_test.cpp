#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqlab/advantage.hpp"
#include "pqlab/corpus.hpp"

using namespace pqlab;

namespace {

SeededSampler seeded(std::string id, std::size_t seed, std::size_t out, std::function<BitString(const BitString&)> g) {
  return {std::move(id), [seed](int) { return seed; }, [out](int) { return out; },
          [g](int, const BitString& s) { return g(s); }};
}

// Shortest program printing y, by running every program up to max_len.
std::optional<std::size_t> brute_kt(const UniversalMachine& u, const BitString& y, std::size_t max_len,
                                    std::uint64_t budget) {
  for (std::size_t len = 0; len <= max_len; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      auto r = run_program(u, BitString::from_uint(v, len), budget);
      if (r.status == RunStatus::Output && r.output == y) return len;
    }
  return std::nullopt;
}

// Honest acceptance recomputed from the acceptance rule 2^(K^t(Y) + k) p_Y >= 1.
Rational oracle_acceptance(const AdvantageProtocol& proto, int lambda) {
  std::size_t n = proto.repetitions(lambda);
  UniversalMachine u = advantage_machine(proto, lambda);
  ExactDistribution tuples = exact_pmf(proto.base, lambda).power(n);
  Rational acc = 0;
  for (const auto& [y, p] : tuples.masses()) {
    std::size_t cap = 2 * y.size() + 4;
    auto kt = brute_kt(u, y, cap, proto.budget);
    std::size_t kk = kt ? *kt : cap + 1;
    if (pow2_times_at_least_one(static_cast<long>(kk) + proto.k, p)) acc += p;
  }
  return acc;
}

}  // namespace

TEST_CASE("majority-of-3 sampler") {
  auto m = exact_pmf(corpus_sampler("maj3"), 2);
  CHECK(m.mass(BitString("0")) == Rational(1, 2));
  CHECK(m.mass(BitString("1")) == Rational(1, 2));
}

TEST_CASE("honest acceptance matches the acceptance-rule oracle") {
  for (const std::string id : {"uniform1", "maj3", "skew2"})
    for (unsigned k : {1u, 2u}) {
      AdvantageProtocol proto = make_advantage_protocol(corpus_sampler(id), 1, k, 2);
      CAPTURE(id);
      CAPTURE(k);
      CHECK(honest_acceptance(proto, 2) == oracle_acceptance(proto, 2));
    }
}

TEST_CASE("completeness lower bound") {
  for (const auto& id : sampler_ids())
    for (int lambda : {2, 3})
      for (std::size_t n : {2u, 4u})
        for (unsigned k : {1u, 2u, 3u}) {
          AdvantageProtocol proto = make_advantage_protocol(corpus_sampler(id), 1, k, n);
          CAPTURE(id);
          CHECK(honest_acceptance(proto, lambda) >= 1 - pow2(-static_cast<int>(k)));
        }
  auto point = seeded("point", 2, 2, [](const BitString&) { return BitString("10"); });
  CHECK(honest_acceptance(make_advantage_protocol(point, 1, 1, 3), 2) == 1);
}

TEST_CASE("the protocol as a scheme") {
  IVPoQ s = build_advantage_protocol(corpus_sampler("uniform1"), 1);
  CHECK(s.public_coin);
  AdvantageProtocol proto = make_advantage_protocol(corpus_sampler("uniform1"), 1);
  CHECK(proto.repetitions(3) == 3);
  CHECK(make_advantage_protocol(corpus_sampler("uniform1"), 2).repetitions(3) == 16);
  CHECK(ivpoq_accept_prob(s, s.prover, 2) == honest_acceptance(proto, 2));
}

TEST_CASE("solver to sampler") {
  SeededSampler a = corpus_sampler("maj3-2");
  SeededSampler honest = corpus_cheater("honest", a, 3);
  CHECK(solver_to_sampler(honest, 3).pmf(2) == exact_pmf(a, 2));
  auto diag = seeded("diag", 1, 2, [](const BitString& s) { return s + s; });
  CHECK(solver_to_sampler(diag, 2).pmf(1) == ExactDistribution::uniform_bits(1));
  auto same = seeded("same", 1, 4, [](const BitString&) { return BitString("1010"); });
  CHECK(solver_to_sampler(same, 2).pmf(1) == ExactDistribution::point(BitString("10")));
  // N need not be a power of two.
  auto three = seeded("three", 0, 3, [](const BitString&) { return BitString("100"); });
  CHECK(solver_to_sampler(three, 3).pmf(1) ==
        ExactDistribution::from_masses({{BitString("0"), Rational(2, 3)}, {BitString("1"), Rational(1, 3)}}));
  for (const auto& sid : sampler_ids())
    for (const auto& cid : cheater_ids()) {
      SeededSampler p = corpus_cheater(cid, corpus_sampler(sid), 2);
      CHECK(solver_to_sampler(p, 2).pmf(2) == average_marginal(exact_pmf(p, 2), 2));
    }
}

TEST_CASE("soundness chain") {
  SeededSampler a = corpus_sampler("maj3");
  AdvantageProtocol proto = make_advantage_protocol(a, 1, 1, 2);
  GameReport honest = soundness_bound_audit(proto, corpus_cheater("honest", a, 2), 2);
  CHECK(honest.all_pass());
  CHECK(honest.quantities.at("SD(A,B)") == 0);
  CHECK(honest.quantities.at("delta") <= Rational(1, 2));
  for (const auto& c : honest.checks) CHECK(recompute_pass(c));
  for (const auto& cid : cheater_ids()) {
    GameReport r = soundness_bound_audit(proto, corpus_cheater(cid, a, 2), 2);
    CAPTURE(cid);
    CHECK(r.all_pass());
  }
  auto never = seeded("never", 0, 4, [](const BitString&) { return BitString("1010"); });
  CHECK_THROWS_AS(soundness_bound_audit(make_advantage_protocol(corpus_sampler("maj3-2"), 1, 1, 2), never, 2),
                  EmptyAcceptingSet);
}

TEST_CASE("good set") {
  auto u = ExactDistribution::uniform_bits(1);
  auto same = good_set(u, u, 1);
  CHECK(same.good.size() == 2);
  CHECK(same.miss_mass == 0);
  auto skew = ExactDistribution::from_masses({{BitString("0"), Rational(3, 4)}, {BitString("1"), Rational(1, 4)}});
  auto g = good_set(u, skew, 1);
  CHECK(g.good.empty());
  CHECK(g.miss_mass == 1);
  CHECK(g.bound == Rational(3, 2));
  // Disjoint supports: the gap 1 exceeds 1/(3p) only for p > 1/3.
  auto p0 = ExactDistribution::point(BitString("0")), p1 = ExactDistribution::point(BitString("1"));
  auto far = good_set(p0, p1, 1);
  CHECK(far.miss_mass == 1);
  CHECK(far.bound == 6);
  auto near = good_set(p0, p1, Rational(1, 6));
  CHECK(near.miss_mass == 0);
  CHECK(near.bound == 1);
  // Oracle: recompute membership directly.
  SeededSampler q = corpus_sampler("skew2");
  ExactDistribution qd = exact_pmf(q, 2);
  for (const auto& pid : perturbation_ids())
    for (Rational p : {Rational(1), Rational(1, 2), Rational(1, 6)}) {
      ExactDistribution s = corpus_perturbation(pid, qd, 2);
      GoodSet gs = good_set(qd, s, p);
      Rational miss = 0;
      for (const auto& [x, w] : qd.masses()) {
        Rational gap = abs(w - s.mass(x));
        if (gap > w / (3 * p)) miss += w;
      }
      CAPTURE(pid);
      CHECK(gs.miss_mass == miss);
      CHECK(miss <= 6 * p * statistical_distance(qd, s));
    }
}
