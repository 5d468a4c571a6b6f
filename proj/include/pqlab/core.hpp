// Bit strings, exact distributions and seeded samplers.
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pqlab/interval.hpp"

namespace pqlab {

using Rational = mpq_class;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedTuple : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidDistribution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Enumeration caps shared by every exhaustive computation.
struct Limits {
  std::uint64_t max_seed_space = std::uint64_t{1} << 22;
  int max_program_len = 30;
  std::uint64_t max_steps = 1'000'000;
};
Limits& limits();

class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string bits);

  static BitString from_uint(std::uint64_t value, std::size_t width);
  static BitString from_hex(const std::string& hex);
  static BitString ones(std::size_t n) { return BitString(std::string(n, '1'), 0); }
  static BitString zeros(std::size_t n) { return BitString(std::string(n, '0'), 0); }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int operator[](std::size_t i) const { return bits_[i] == '1'; }
  void push_back(int b) { bits_.push_back(b ? '1' : '0'); }
  void append(const BitString& o) { bits_ += o.bits_; }
  BitString slice(std::size_t pos, std::size_t len) const;
  BitString prefix(std::size_t len) const { return slice(0, len); }
  bool is_prefix_of(const BitString& o) const;
  std::uint64_t to_uint() const;
  const std::string& str() const { return bits_; }

  friend BitString operator+(BitString a, const BitString& b) {
    a.bits_ += b.bits_;
    return a;
  }
  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

 private:
  BitString(std::string bits, int) : bits_(std::move(bits)) {}
  std::string bits_;
};

std::size_t bit_length(std::uint64_t v);
unsigned ceil_log2(std::uint64_t v);

// Self-delimiting length prefix: 1^b 0 bin_b(|m|) m, where b = bit_length(|m|).
BitString encode_prefixed(const BitString& m);
std::optional<BitString> decode_prefixed(const BitString& s, std::size_t& pos);
BitString encode_list(const std::vector<BitString>& items);
std::optional<std::vector<BitString>> decode_list(const BitString& s);
BitString encode_pair(const BitString& a, const BitString& b);
std::pair<BitString, BitString> decode_pair(const BitString& s);

class ExactDistribution {
 public:
  using Map = std::map<BitString, Rational>;

  ExactDistribution();
  static ExactDistribution point(const BitString& x);
  static ExactDistribution uniform(const std::vector<BitString>& xs);
  static ExactDistribution uniform_bits(std::size_t n);
  static ExactDistribution from_masses(Map masses);

  const Map& masses() const& { return mass_; }
  // By value on temporaries, so `for (... : f().masses())` stays valid.
  Map masses() && { return std::move(mass_); }
  Rational mass(const BitString& x) const;
  std::size_t size() const { return mass_.size(); }
  std::vector<BitString> support() const;
  bool is_point() const { return mass_.size() == 1; }

  ExactDistribution map(const std::function<BitString(const BitString&)>& f) const;
  Rational prob(const std::function<bool(const BitString&)>& pred) const;
  // Conditions on pred; throws InvalidDistribution if pred has mass 0.
  ExactDistribution condition(const std::function<bool(const BitString&)>& pred) const;
  // Concatenation of independent samples.
  ExactDistribution product(const ExactDistribution& o) const;
  ExactDistribution power(std::size_t n) const;
  // (1-w)*this + w*o
  ExactDistribution mix(const ExactDistribution& o, const Rational& w) const;

  friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;

 private:
  Map mass_;
};

// Collects weighted outcomes; finish() demands total mass exactly 1.
class MassAccumulator {
 public:
  void add(const BitString& x, const Rational& w);
  const ExactDistribution::Map& raw() const { return mass_; }
  Rational total() const;
  ExactDistribution finish() const { return ExactDistribution::from_masses(mass_); }

 private:
  ExactDistribution::Map mass_;
};

struct SeededSampler {
  std::string id;
  std::function<std::size_t(int)> seed_len;
  std::function<std::size_t(int)> out_len;
  std::function<BitString(int, const BitString&)> eval;
};

void check_seed_space(std::size_t seed_bits, std::uint64_t cap);
ExactDistribution exact_pmf(const SeededSampler& s, int lambda);
ExactDistribution exact_pmf(const SeededSampler& s, int lambda, std::uint64_t cap);

// Any source whose exact output law is known per lambda.
struct Sampler {
  std::string id;
  std::function<ExactDistribution(int)> pmf;
};
Sampler as_sampler(const SeededSampler& s);

// Realizes a dyadic law as a seeded sampler: seed_len = max log2 of the
// denominators, outcomes assigned to consecutive seed ranges in key order.
SeededSampler sampler_from_dyadic(std::string id, std::function<ExactDistribution(int)> law);

// Randomized map (lambda, input) -> law of output.
using Channel = std::function<ExactDistribution(int, const BitString&)>;

struct ConditionalSampler {
  std::string id;
  std::function<std::size_t(int)> seed_len;
  std::function<BitString(int, const BitString&, const BitString&)> eval;  // (lambda, input, seed)
};
Channel as_channel(const ConditionalSampler& s);
ExactDistribution push_through(const Channel& ch, int lambda, const ExactDistribution& in);

Rational statistical_distance(const ExactDistribution& p, const ExactDistribution& q);

struct Divergence {
  bool infinite = false;
  Interval bits;  // valid only when !infinite
};
Divergence kl_divergence(const ExactDistribution& p, const ExactDistribution& q);

// i is 1-based; every support element must split into n equal blocks.
ExactDistribution marginal(const ExactDistribution& p, std::size_t n, std::size_t i);
ExactDistribution average_marginal(const ExactDistribution& p, std::size_t n);

std::string to_string(const Rational& r);
Rational pow2(int e);
// Exact test of 2^e * r >= 1 for r > 0.
bool pow2_times_at_least_one(long e, const Rational& r);

}  // namespace pqlab

template <>
struct std::hash<pqlab::BitString> {
  std::size_t operator()(const pqlab::BitString& b) const noexcept { return std::hash<std::string>{}(b.str()); }
};
