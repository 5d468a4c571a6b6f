#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pqlab/core.hpp"
#include "pqlab/report.hpp"

using namespace pqlab;

namespace {

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

ExactDistribution law(std::initializer_list<std::pair<const char*, Rational>> xs) {
  ExactDistribution::Map m;
  for (const auto& [x, w] : xs) m[BitString(x)] = w;
  return ExactDistribution::from_masses(m);
}

SeededSampler sampler(std::size_t seed, std::size_t out, std::function<BitString(const BitString&)> g) {
  return {"t", [seed](int) { return seed; }, [out](int) { return out; },
          [g](int, const BitString& s) { return g(s); }};
}

}  // namespace

TEST_CASE("bit strings") {
  BitString a("0110");
  CHECK(a.size() == 4);
  CHECK(a[1] == 1);
  CHECK(a.to_uint() == 6);
  CHECK(BitString::from_uint(6, 4) == a);
  CHECK(BitString::from_hex("a5").str() == "10100101");
  CHECK(a.slice(1, 2).str() == "11");
  CHECK(BitString("01").is_prefix_of(a));
  CHECK_FALSE(BitString("1").is_prefix_of(a));
  CHECK_THROWS(BitString("012"));
}

TEST_CASE("self-delimiting encodings round trip") {
  for (std::size_t n = 0; n <= 9; ++n)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); v += 1 + v / 3) {
      BitString m = BitString::from_uint(v, n);
      BitString e = encode_prefixed(m);
      std::size_t pos = 0;
      auto d = decode_prefixed(e + BitString("1"), pos);
      REQUIRE(d);
      CHECK(*d == m);
      CHECK(pos == e.size());
    }
  std::vector<BitString> items{BitString(""), BitString("1"), BitString("0110"), BitString("")};
  auto back = decode_list(encode_list(items));
  REQUIRE(back);
  CHECK(*back == items);
  auto [x, y] = decode_pair(encode_pair(BitString("10"), BitString("111")));
  CHECK(x.str() == "10");
  CHECK(y.str() == "111");
  // An encoding of n items is prefix-free among encodings of n items.
  CHECK_FALSE(encode_list({BitString("1")}).is_prefix_of(encode_list({BitString("11")})));
}

TEST_CASE("exact pmf of seeded samplers") {
  auto constant = sampler(3, 2, [](const BitString&) { return BitString("00"); });
  CHECK(exact_pmf(constant, 2) == ExactDistribution::point(BitString("00")));

  auto identity = sampler(2, 2, [](const BitString& s) { return s; });
  auto id = exact_pmf(identity, 1);
  CHECK(id.size() == 4);
  for (const char* x : {"00", "01", "10", "11"}) CHECK(id.mass(BitString(x)) == Rational(1, 4));

  auto maj = sampler(3, 1, [](const BitString& s) { return BitString::from_uint(s[0] + s[1] + s[2] >= 2, 1); });
  // Oracle: count the 8 seeds by hand.
  int ones = 0;
  for (int r = 0; r < 8; ++r) ones += __builtin_popcount(r) >= 2;
  auto m = exact_pmf(maj, 1);
  CHECK(m.mass(BitString("1")) == q(ones, 8));
  CHECK(m.mass(BitString("0")) == q(8 - ones, 8));
  CHECK(m.mass(BitString("1")) == Rational(1, 2));

  auto bad = sampler(1, 2, [](const BitString& s) { return s; });
  CHECK_THROWS_AS(exact_pmf(bad, 1), MalformedTuple);
  CHECK_THROWS_AS(exact_pmf(identity, 1, 3), BudgetExceeded);
}

TEST_CASE("distributions are validated") {
  CHECK_THROWS_AS(law({{"0", Rational(1, 2)}}), InvalidDistribution);
  CHECK_THROWS_AS(law({{"0", Rational(3, 2)}, {"1", Rational(-1, 2)}}), InvalidDistribution);
  auto u = ExactDistribution::uniform_bits(2);
  CHECK_THROWS_AS(u.condition([](const BitString& x) { return x.size() == 3; }), InvalidDistribution);
  auto c = u.condition([](const BitString& x) { return x[0] == 1; });
  CHECK(c.mass(BitString("10")) == Rational(1, 2));
  CHECK(u.mix(ExactDistribution::point(BitString("00")), Rational(1, 2)).mass(BitString("00")) == Rational(5, 8));
  CHECK(ExactDistribution::uniform_bits(1).power(3) == ExactDistribution::uniform_bits(3));
}

TEST_CASE("statistical distance") {
  auto u = ExactDistribution::uniform_bits(1);
  CHECK(statistical_distance(u, u) == 0);
  CHECK(statistical_distance(ExactDistribution::point(BitString("0")), ExactDistribution::point(BitString("1"))) == 1);
  CHECK(statistical_distance(u, law({{"0", Rational(3, 4)}, {"1", Rational(1, 4)}})) == Rational(1, 4));
}

TEST_CASE("KL divergence") {
  auto u = ExactDistribution::uniform_bits(1);
  auto p0 = ExactDistribution::point(BitString("0"));
  auto same = kl_divergence(u, u);
  CHECK_FALSE(same.infinite);
  CHECK(same.bits.contains(0));
  auto one = kl_divergence(p0, u);
  CHECK_FALSE(one.infinite);
  CHECK(one.bits.contains(1));
  CHECK(kl_divergence(u, p0).infinite);
  // Oracle in double precision.
  auto p = law({{"0", Rational(1, 3)}, {"1", Rational(2, 3)}});
  double want = (1.0 / 3) * std::log2((1.0 / 3) / 0.5) + (2.0 / 3) * std::log2((2.0 / 3) / 0.5);
  auto got = kl_divergence(p, u);
  CHECK(got.bits.lo <= want + 1e-12);
  CHECK(got.bits.hi >= want - 1e-12);
  CHECK(got.bits.hi - got.bits.lo < 1e-12);
}

TEST_CASE("marginals") {
  auto d = law({{"01", Rational(1, 3)}, {"11", Rational(2, 3)}});
  auto prod = d.product(d);
  CHECK(marginal(prod, 2, 1) == d);
  CHECK(marginal(prod, 2, 2) == d);
  auto diag = law({{"00", Rational(1, 2)}, {"11", Rational(1, 2)}});
  CHECK(marginal(diag, 2, 1) == ExactDistribution::uniform_bits(1));
  CHECK(marginal(diag, 2, 2) == ExactDistribution::uniform_bits(1));
  CHECK(marginal(ExactDistribution::point(BitString("0110")), 2, 2) == ExactDistribution::point(BitString("10")));
  CHECK(average_marginal(law({{"01", Rational(1, 1)}}), 2) == ExactDistribution::uniform_bits(1));
  CHECK_THROWS(marginal(ExactDistribution::point(BitString("011")), 2, 1));
}

TEST_CASE("dyadic laws become seeded samplers") {
  auto d = law({{"00", Rational(1, 8)}, {"01", Rational(5, 8)}, {"11", Rational(1, 4)}});
  auto s = sampler_from_dyadic("d", [d](int) { return d; });
  CHECK(s.seed_len(1) == 3);
  CHECK(exact_pmf(s, 1) == d);
  auto thirds = law({{"0", Rational(1, 3)}, {"1", Rational(2, 3)}});
  auto t = sampler_from_dyadic("t", [thirds](int) { return thirds; });
  CHECK_THROWS(exact_pmf(t, 1));
}

TEST_CASE("rational helpers") {
  CHECK(to_string(q(6, 4)) == "3/2");
  CHECK(to_string(Rational(0)) == "0/1");
  CHECK(pow2(-3) == Rational(1, 8));
  CHECK(pow2_times_at_least_one(3, Rational(1, 8)));
  CHECK_FALSE(pow2_times_at_least_one(2, Rational(1, 8)));
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(5) == 3);
  CHECK(bit_length(8) == 4);
}

TEST_CASE("intervals enclose their values") {
  for (int e = -5; e <= 5; ++e) {
    auto l = log2_of(pow2(e));
    CHECK(l.lo == e);
    CHECK(l.hi == e);
  }
  auto l3 = log2_of(Rational(3));
  CHECK(l3.lo <= std::log2(3.0L));
  CHECK(l3.hi >= std::log2(3.0L));
  auto s = sqrt(Interval::of(Rational(2)));
  CHECK(s.lo * s.lo <= 2);
  CHECK(s.hi * s.hi >= 2);
  auto ln2 = Interval::ln2();
  CHECK(ln2.contains(std::log(2.0L)));
  auto back = parse_interval(format_interval(l3));
  REQUIRE(back);
  CHECK(back->lo == l3.lo);
  CHECK(back->hi == l3.hi);
}

TEST_CASE("check records recompute from their operands") {
  GameReport r;
  CHECK(r.check("a", Rational(1, 3), "<=", Rational(1, 2)));
  CHECK_FALSE(r.check("b", Rational(1, 2), "<", Rational(1, 2)));
  CHECK(r.check("c", Rational(1, 2), "==", q(2, 4)));
  CHECK(r.check("d", Interval{0.5L, 0.6L}, "<=~", Interval{0.6L, 0.7L}));
  CHECK_FALSE(r.check("e", Interval{0.5L, 0.6L}, "<~", Interval{0.6L, 0.7L}));
  CHECK(r.check("f", true));
  for (const auto& c : r.checks) CHECK(recompute_pass(c) == c.pass);
  CHECK_FALSE(r.all_pass());
  CHECK_THROWS(r.check("g", Rational(0), ">", Rational(1)));
}
