// Security games for one-way functions and one-way puzzles, plus the function-side
// constructions: puzzle from a function, the universal function, padding and the
// lift from a cofinite parameter set.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqlab/core.hpp"
#include "pqlab/kolmogorov.hpp"

namespace pqlab {

struct EmptyPreimage : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoFeasibleLambda : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FunctionFamily {
  std::string id;
  std::function<std::size_t(int)> in_len;
  std::function<BitString(int, const BitString&)> eval;
  std::function<std::uint64_t(int)> step_cost;
};

struct SigmaSet {
  std::string description;
  std::function<bool(int)> contains;

  static SigmaSet all();
  static SigmaSet finite(std::vector<int> members);
  static SigmaSet cofinite(std::vector<int> excluded);
  static SigmaSet arithmetic(int modulus, int residue);
  SigmaSet intersect(const SigmaSet& o) const;
};

// samp yields encode_pair(puzz, ans).
struct OneWayPuzzle {
  std::string id;
  std::function<ExactDistribution(int)> samp;
  std::function<bool(int, const BitString& puzz, const BitString& ans)> ver;
};

OneWayPuzzle puzzle_from_sampler(std::string id, const SeededSampler& samp,
                                 std::function<bool(int, const BitString&, const BitString&)> ver);

// Law of (x, f(x)) as encode_pair(x, f(x)) for uniform x.
ExactDistribution input_image_pairs(const FunctionFamily& f, int lambda);

Rational owf_advantage(const FunctionFamily& f, const Channel& adversary, int lambda);
Rational distowf_distance(const FunctionFamily& f, const Channel& adversary, int lambda);
// Uniform element of the preimage of y. Throws EmptyPreimage for non-images.
Channel canonical_inverter(const FunctionFamily& f);

struct PuzzleGame {
  Rational correctness;
  Rational success;
};
PuzzleGame puzzle_game(const OneWayPuzzle& puzzle, const Channel& adversary, int lambda);

// puzz = 1^n 0 f(x), ans = x.
OneWayPuzzle owf_to_owpuzz(const FunctionFamily& f);
Channel owf_adversary_from_puzzle_adversary(const Channel& puzzle_adversary, const FunctionFamily& f);

// A machine the universal function may run on a block.
struct Candidate {
  std::string id;
  std::function<std::optional<BitString>(const BitString& input, std::uint64_t steps)> run;
};
std::vector<Candidate> machine_candidates(const UniversalMachine& u);
Candidate family_candidate(const FunctionFamily& f);

// Output encoding of one block: bottom is "0", a value v is "1" ++ encode_prefixed(v).
BitString encode_block_value(const std::optional<BitString>& v);

// g(y) for |y| = l: N = floor(sqrt l), blocks y_1..y_N of N bits each, v_i = M_i(y_i)
// within N^3 steps; candidates beyond the list count as never halting.
FunctionFamily universal_owf(std::vector<Candidate> candidates);
// The reduction from the universal function back to candidate j (1-based). For
// N < j it falls back to j = 1, as in the generic construction.
Channel universal_reduction(std::vector<Candidate> candidates, std::size_t j, Channel g_adversary,
                            std::function<std::size_t(int)> in_len);

// f'(z) = f(z_1..i) ++ z_{i+1..r}, i the largest index with i^c <= r. Assumes n(lambda) = lambda.
FunctionFamily pad_to_quadratic(const FunctionFamily& f, unsigned c);
std::size_t pad_split(std::size_t r, unsigned c);
// Adversary for f at length i built from one for f' at length i^c: pad with a uniform tail.
Channel pad_reduction(const Channel& padded_adversary, unsigned c);

// g(x) = f(first n(lambda_l) bits), lambda_l the largest lambda with n(lambda) <= l.
FunctionFamily lift_from_cofinite(const FunctionFamily& f, std::function<std::size_t(int)> schedule);
int lift_lambda(const std::function<std::size_t(int)>& schedule, std::size_t l);
Channel lift_reduction(const Channel& g_adversary, std::function<std::size_t(int)> schedule, std::size_t l);

}  // namespace pqlab
