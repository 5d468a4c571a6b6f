#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pqlab/kolmogorov.hpp"

using namespace pqlab;

namespace {

// Independent reading of the default registry: header 1^n 0 picks the literal
// machine (n = 1) or the run-length machine (n = 2). A program counts only when
// the machine halts exactly at its last bit.
struct Reader {
  const std::string& s;
  std::size_t pos = 0;
  bool unary(std::size_t& n) {
    n = 0;
    while (pos < s.size() && s[pos] == '1') ++n, ++pos;
    if (pos == s.size()) return false;
    ++pos;
    return true;
  }
  bool take(std::size_t n, std::string& out) {
    if (pos + n > s.size()) return false;
    out = s.substr(pos, n);
    pos += n;
    return true;
  }
};

std::optional<std::string> oracle_run(const std::string& program) {
  Reader r{program};
  std::size_t n = 0;
  if (!r.unary(n)) return std::nullopt;
  std::string out;
  if (n == 1) {
    std::size_t l = 0;
    if (!r.unary(l) || !r.take(l, out)) return std::nullopt;
  } else if (n == 2) {
    std::size_t a = 0, b = 0;
    std::string count, pat;
    if (!r.unary(a) || !r.take(a, count)) return std::nullopt;
    std::uint64_t c = count.empty() ? 0 : std::stoull(count, nullptr, 2);
    if (!r.unary(b) || !r.take(b, pat)) return std::nullopt;
    for (std::uint64_t i = 0; i < c; ++i) out += pat;
  } else {
    return std::nullopt;
  }
  if (r.pos != program.size()) return std::nullopt;
  return out;
}

// Shortest program per output, lexicographically first among the shortest.
std::map<std::string, std::string> oracle_witnesses(std::size_t max_len) {
  std::map<std::string, std::string> best;
  for (std::size_t len = 0; len <= max_len; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      std::string p = BitString::from_uint(v, len).str();
      auto out = oracle_run(p);
      if (out && !best.count(*out)) best[*out] = p;
    }
  return best;
}

std::vector<BitString> all_strings(std::size_t max_len) {
  std::vector<BitString> xs;
  for (std::size_t n = 0; n <= max_len; ++n)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) xs.push_back(BitString::from_uint(v, n));
  return xs;
}

}  // namespace

TEST_CASE("literal machine") {
  UniversalMachine u({literal_machine()});
  auto ok = run_program(u, BitString("10" "11110" "0101"), 1000);
  CHECK(ok.status == RunStatus::Output);
  CHECK(ok.output.str() == "0101");
  CHECK(run_program(u, BitString("10" "11110" "01"), 1000).status == RunStatus::InvalidProgram);
  CHECK(run_program(u, BitString("10" "11110" "010111"), 1000).status == RunStatus::InvalidProgram);
  CHECK(run_program(u, BitString("10" "11110" "0101"), 3).status == RunStatus::NonHalting);
  CHECK(run_program(u, BitString("110" "0"), 1000).status != RunStatus::Output);
}

TEST_CASE("run_program agrees with an independent interpreter") {
  UniversalMachine u = default_universal_machine();
  for (std::size_t len = 0; len <= 11; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      BitString p = BitString::from_uint(v, len);
      auto want = oracle_run(p.str());
      auto got = run_program(u, p, 1'000'000);
      CAPTURE(p.str());
      REQUIRE((got.status == RunStatus::Output) == want.has_value());
      if (want) CHECK(got.output.str() == *want);
    }
}

TEST_CASE("K^t matches exhaustive search") {
  UniversalMachine u = default_universal_machine();
  auto best = oracle_witnesses(14);
  for (const auto& x : all_strings(5)) {
    auto r = kt_complexity(u, x);
    CAPTURE(x.str());
    REQUIRE(best.count(x.str()));
    REQUIRE(r.value);
    CHECK(*r.value == best[x.str()].size());
    CHECK(r.witness.str() == best[x.str()]);
  }
}

TEST_CASE("K^t examples") {
  UniversalMachine lit({literal_machine()});
  auto r = kt_complexity(lit, BitString("0101"), 1'000'000, 12);
  REQUIRE(r.value);
  CHECK(*r.value == 11);
  auto e = kt_complexity(lit, BitString(""), 1'000'000, 4);
  REQUIRE(e.value);
  CHECK(*e.value == 3);
  CHECK_FALSE(kt_complexity(UniversalMachine(), BitString("01"), 1'000'000, 8).value);
  // Too small a step budget leaves nothing.
  CHECK_FALSE(kt_complexity(lit, BitString("0101"), 4, 12).value);
  // The default cap always admits the literal program.
  for (const auto& x : all_strings(6)) CHECK(kt_complexity(default_universal_machine(), x).value);
  CHECK_THROWS_AS(kt_complexity(lit, BitString("0"), 10, 31), BudgetExceeded);
}

TEST_CASE("run-length programs compress repetitive strings") {
  UniversalMachine u = default_universal_machine();
  auto r = kt_complexity(u, BitString(std::string(24, '1')), 1'000'000, 20);
  REQUIRE(r.value);
  CHECK(*r.value < 24);
  auto out = run_program(u, r.witness, 1'000'000);
  CHECK(out.output.str() == std::string(24, '1'));
}

TEST_CASE("valid program enumeration") {
  UniversalMachine u = default_universal_machine();
  auto progs = enumerate_valid_programs(u, 10, 1'000'000);
  std::size_t want = 0;
  for (std::size_t len = 0; len <= 10; ++len)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) want += oracle_run(BitString::from_uint(v, len).str()).has_value();
  CHECK(progs.size() == want);
  std::vector<BitString> ps;
  for (const auto& p : progs) ps.push_back(p.program);
  CHECK(is_prefix_free(ps));
  CHECK(kraft_sum(ps) <= 1);
  CHECK_THROWS_AS(enumerate_valid_programs(u, 31, 10), BudgetExceeded);
}

TEST_CASE("Kraft sums") {
  CHECK(kraft_sum({BitString("0"), BitString("10"), BitString("11")}) == 1);
  Rational five_quarters(5, 4);
  CHECK(kraft_sum({BitString("0"), BitString("1"), BitString("00")}) == five_quarters);
  CHECK_FALSE(is_prefix_free({BitString("0"), BitString("1"), BitString("00")}));
  CHECK(is_prefix_free({BitString("0"), BitString("10"), BitString("11")}));
}

TEST_CASE("minimal witnesses satisfy Kraft") {
  UniversalMachine u = default_universal_machine();
  std::vector<BitString> ws;
  Rational oracle = 0;
  for (const auto& x : all_strings(4)) {
    auto r = kt_complexity(u, x);
    REQUIRE(r.value);
    ws.push_back(r.witness);
    oracle += pow2(-static_cast<int>(*r.value));
  }
  REQUIRE(is_prefix_free(ws));
  CHECK(kraft_sum(ws) == oracle);
  CHECK(oracle <= 1);
}

TEST_CASE("Shannon-Fano code") {
  ExactDistribution p = ExactDistribution::from_masses(
      {{BitString("00"), Rational(1, 2)}, {BitString("01"), Rational(1, 4)}, {BitString("10"), Rational(1, 4)}});
  auto code = shannon_fano(p);
  CHECK(code.codeword.at(BitString("00")).size() == 2);
  CHECK(code.codeword.at(BitString("01")).size() == 3);
  CHECK(code.codeword.at(BitString("10")).size() == 3);
  CHECK(code.order == std::vector<BitString>{BitString("00"), BitString("01"), BitString("10")});
  for (std::size_t k = 0; k <= 4; ++k) {
    auto u = shannon_fano(ExactDistribution::uniform_bits(k));
    for (const auto& [x, c] : u.codeword) CHECK(c.size() == k + 1);
  }
  auto pt = shannon_fano(ExactDistribution::point(BitString("101")));
  CHECK(pt.codeword.at(BitString("101")).size() == 1);
  CHECK(shannon_fano_length(Rational(1, 3)) == 2);
  CHECK(shannon_fano_length(Rational(1)) == 1);
}

TEST_CASE("Shannon-Fano bounds on skewed laws") {
  // Masses 1/3, 1/5, ... with the remainder on the last string.
  ExactDistribution::Map m;
  Rational left = 1;
  for (int i = 0; i < 6; ++i) {
    Rational w(1, 3 + 2 * i);
    m[BitString::from_uint(i, 3)] = w;
    left -= w;
  }
  m[BitString("111")] = left;
  ExactDistribution p = ExactDistribution::from_masses(m);
  auto code = shannon_fano(p);
  std::vector<BitString> cs;
  for (const auto& [x, c] : code.codeword) {
    double px = p.mass(x).get_d();
    CHECK(std::log2(1 / px) < static_cast<double>(c.size()));
    CHECK(static_cast<double>(c.size()) <= std::log2(1 / px) + 1);
    cs.push_back(c);
  }
  CHECK(is_prefix_free(cs));
}

TEST_CASE("coding machine decodes every codeword") {
  ExactDistribution p = ExactDistribution::from_masses(
      {{BitString("00"), Rational(5, 8)}, {BitString("01"), Rational(1, 8)}, {BitString("11"), Rational(1, 4)}});
  UniversalMachine u = default_universal_machine();
  std::size_t index = u.add(coding_machine(p, 3, 10));
  auto code = shannon_fano(p);
  for (const auto& [x, c] : code.codeword) {
    // 1^index 0, then 1^l 0 bin(3) with l = 2, then the codeword.
    BitString prog = BitString::ones(index) + BitString("0") + BitString("110") + BitString("11") + c;
    CHECK(prog.size() == coding_header_cost(index, 3) + c.size());
    auto out = run_program(u, prog, 1'000'000);
    REQUIRE(out.status == RunStatus::Output);
    CHECK(out.output == x);
  }
}

TEST_CASE("incompressibility against the oracle table") {
  auto best = oracle_witnesses(14);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int k = 1; k <= 4; ++k) {
      Rational mass = 0;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        std::size_t kt = best.at(BitString::from_uint(v, n).str()).size();
        if (static_cast<long>(kt) >= static_cast<long>(n) - k) mass += pow2(-static_cast<int>(n));
      }
      CHECK(mass >= 1 - pow2(-k));
    }
}
