#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pqlab/corpus.hpp"
#include "pqlab/games.hpp"

using namespace pqlab;

namespace {

FunctionFamily fam(std::string id, std::function<BitString(const BitString&)> g) {
  return {std::move(id), [](int lambda) { return static_cast<std::size_t>(lambda); },
          [g](int, const BitString& x) { return g(x); }, [](int lambda) { return std::uint64_t(lambda); }};
}

const FunctionFamily identity = fam("id", [](const BitString& x) { return x; });
const FunctionFamily zeros_f = fam("zero", [](const BitString& x) { return BitString::zeros(x.size()); });
const FunctionFamily xor_fold = fam("xor", [](const BitString& x) { return BitString::from_uint(x[0] ^ x[1], 1); });
const FunctionFamily drop_last = fam("drop", [](const BitString& x) { return x.prefix(x.size() - 1); });

Channel fixed(const BitString& x) {
  return [x](int, const BitString&) { return ExactDistribution::point(x); };
}

// Brute-force oracle: Pr_x[f(A(f(x))) = f(x)].
Rational oracle_advantage(const FunctionFamily& f, const Channel& a, int lambda) {
  std::size_t n = f.in_len(lambda);
  Rational total = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString x = BitString::from_uint(v, n);
    BitString y = f.eval(lambda, x);
    for (const auto& [x2, w] : a(lambda, y).masses())
      if (x2.size() == n && f.eval(lambda, x2) == y) total += w;
  }
  return total / pow2(static_cast<int>(n)).get_num();
}

// Strips 1^n 0 from a puzzle of owf_to_owpuzz.
Channel puzzle_from_inverter(const Channel& inv) {
  return [inv](int lambda, const BitString& puzz) {
    std::size_t i = 0;
    while (puzz[i] == 1) ++i;
    return inv(lambda, puzz.slice(i + 1, puzz.size() - i - 1));
  };
}

}  // namespace

TEST_CASE("inversion advantage examples") {
  Channel echo = [](int, const BitString& y) { return ExactDistribution::point(y); };
  CHECK(owf_advantage(identity, echo, 3) == 1);
  CHECK(owf_advantage(zeros_f, fixed(BitString("101")), 3) == 1);
  CHECK(owf_advantage(xor_fold, fixed(BitString("00")), 2) == Rational(1, 2));
  CHECK(oracle_advantage(xor_fold, fixed(BitString("00")), 2) == Rational(1, 2));
  // Wrong-length answers never count.
  CHECK(owf_advantage(identity, fixed(BitString("0")), 3) == 0);
}

TEST_CASE("advantage agrees with the brute-force oracle on the corpus") {
  for (const auto& fid : function_ids()) {
    FunctionFamily f = corpus_function(fid);
    for (const auto& aid : owf_adversary_ids())
      for (int lambda = 1; lambda <= 4; ++lambda) {
        Channel a = corpus_owf_adversary(aid, f);
        CAPTURE(fid);
        CAPTURE(aid);
        CHECK(owf_advantage(f, a, lambda) == oracle_advantage(f, a, lambda));
      }
  }
}

TEST_CASE("distributional inversion distance") {
  CHECK(distowf_distance(xor_fold, canonical_inverter(xor_fold), 2) == 0);
  CHECK(distowf_distance(zeros_f, fixed(BitString("00")), 2) == Rational(3, 4));
  Channel echo = [](int, const BitString& y) { return ExactDistribution::point(y); };
  CHECK(distowf_distance(identity, echo, 3) == 0);
  for (int n = 1; n <= 4; ++n)
    CHECK(distowf_distance(zeros_f, fixed(BitString::zeros(n)), n) == 1 - pow2(-n));
}

TEST_CASE("canonical inverter") {
  CHECK(canonical_inverter(identity)(3, BitString("101")) == ExactDistribution::point(BitString("101")));
  CHECK(canonical_inverter(drop_last)(3, BitString("10")) ==
        ExactDistribution::uniform({BitString("100"), BitString("101")}));
  CHECK(canonical_inverter(xor_fold)(2, BitString("0")) == ExactDistribution::uniform({BitString("00"), BitString("11")}));
  CHECK_THROWS_AS(canonical_inverter(zeros_f)(2, BitString("01")), EmptyPreimage);
}

TEST_CASE("puzzles from functions") {
  OneWayPuzzle p = owf_to_owpuzz(identity);
  auto g = puzzle_game(p, puzzle_from_inverter(canonical_inverter(identity)), 3);
  CHECK(g.correctness == 1);
  CHECK(g.success == 1);
  CHECK(puzzle_game(p, fixed(BitString("0")), 3).success == 0);
  for (const auto& fid : function_ids())
    for (int lambda = 1; lambda <= 4; ++lambda) {
      FunctionFamily f = corpus_function(fid);
      OneWayPuzzle q = owf_to_owpuzz(f);
      CHECK(puzzle_game(q, fixed(BitString()), lambda).correctness == 1);
      // The puzzle game is the inversion game under the induced adversary.
      Channel a = corpus_owf_adversary("zeros", f);
      CHECK(puzzle_game(q, puzzle_from_inverter(a), lambda).success == owf_advantage(f, a, lambda));
      Channel back = owf_adversary_from_puzzle_adversary(puzzle_from_inverter(a), f);
      CHECK(owf_advantage(f, back, lambda) == owf_advantage(f, a, lambda));
    }
}

TEST_CASE("sigma sets") {
  CHECK(SigmaSet::all().contains(7));
  CHECK(SigmaSet::finite({2, 3}).contains(3));
  CHECK_FALSE(SigmaSet::finite({2, 3}).contains(4));
  CHECK_FALSE(SigmaSet::cofinite({2}).contains(2));
  CHECK(SigmaSet::cofinite({2}).contains(5));
  CHECK(SigmaSet::arithmetic(3, 1).contains(7));
  CHECK_FALSE(SigmaSet::arithmetic(3, 1).intersect(SigmaSet::finite({4, 5})).contains(5));
  CHECK(SigmaSet::arithmetic(3, 1).intersect(SigmaSet::finite({4, 5})).contains(4));
}

TEST_CASE("universal function blocks") {
  Candidate stuck{"stuck", [](const BitString&, std::uint64_t) { return std::optional<BitString>(); }};
  FunctionFamily g = universal_owf({stuck, stuck});
  CHECK(g.eval(4, BitString("1011")).str() == "00");
  FunctionFamily h = universal_owf({family_candidate(identity)});
  BitString y("1011");
  CHECK(h.eval(4, y) == BitString("1") + encode_prefixed(BitString("10")) + BitString("0"));
  CHECK(encode_block_value(std::nullopt).str() == "0");
  // N = floor(sqrt(5)) = 2; the trailing bit is ignored.
  CHECK(h.eval(5, BitString("10110")) == h.eval(4, y));
}

TEST_CASE("universal reduction keeps the advantage") {
  std::vector<Candidate> cands{family_candidate(xor_fold), family_candidate(drop_last)};
  FunctionFamily g = universal_owf(cands);
  Channel a = canonical_inverter(g);
  auto n = [](int lambda) { return static_cast<std::size_t>(lambda); };
  for (std::size_t j = 1; j <= 2; ++j) {
    Channel red = universal_reduction(cands, j, a, n);
    const FunctionFamily& f = j == 1 ? xor_fold : drop_last;
    CHECK(owf_advantage(f, red, 2) >= owf_advantage(g, a, 4));
    CHECK(owf_advantage(f, red, 2) == oracle_advantage(f, red, 2));
  }
}

TEST_CASE("padding") {
  CHECK(pad_split(8, 3) == 2);
  CHECK(pad_split(26, 3) == 2);
  CHECK(pad_split(27, 3) == 3);
  CHECK(pad_split(9, 2) == 3);
  FunctionFamily fp = pad_to_quadratic(xor_fold, 3);
  BitString z("10110011");
  CHECK(fp.eval(8, z) == xor_fold.eval(2, z.prefix(2)) + z.slice(2, 6));
  // A tail-preserving adversary keeps its advantage through the reduction.
  Channel a = canonical_inverter(xor_fold);
  Channel ap = [a](int, const BitString& y) {
    BitString head = y.prefix(1), tail = y.slice(1, y.size() - 1);
    return a(2, head).map([tail](const BitString& x) { return x + tail; });
  };
  CHECK(owf_advantage(fp, ap, 8) == owf_advantage(xor_fold, a, 2));
  CHECK(owf_advantage(xor_fold, pad_reduction(ap, 3), 2) == owf_advantage(fp, ap, 8));
}

TEST_CASE("lift from a cofinite set") {
  std::function<std::size_t(int)> lin = [](int lambda) { return static_cast<std::size_t>(lambda); };
  std::function<std::size_t(int)> sq = [](int lambda) { return static_cast<std::size_t>(lambda) * lambda; };
  CHECK(lift_lambda(lin, 5) == 5);
  CHECK(lift_lambda(sq, 5) == 2);
  CHECK(lift_lambda(sq, 9) == 3);
  FunctionFamily f{"d", sq, [](int, const BitString& x) { return x.prefix(x.size() - 1); },
                   [](int) { return std::uint64_t{1}; }};
  FunctionFamily g = lift_from_cofinite(f, sq);
  BitString x("10110");
  CHECK(g.eval(5, x) == f.eval(2, x.prefix(4)));
  FunctionFamily gl = lift_from_cofinite(identity, lin);
  CHECK(gl.eval(5, x) == x);
  Channel b = canonical_inverter(g);
  CHECK(owf_advantage(f, lift_reduction(b, sq, 5), 2) == owf_advantage(g, b, 5));
}
