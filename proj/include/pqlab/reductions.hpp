// Attacks built from a sampler S and an inverter R: the transcript-completing
// prover against a fixed counterparty and the puzzle solver.
#pragma once

#include <string>
#include <vector>

#include "pqlab/core.hpp"
#include "pqlab/games.hpp"
#include "pqlab/protocols.hpp"
#include "pqlab/report.hpp"

namespace pqlab {

struct InverterRangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// f(k, r) for k in ceil(log2 l) bits (decoded value + 1) and r a seed of S:
// encode_list([k bits, c_1, a_1, ..., c_k]) of the transcript S(r), or "0" when
// k > l. S must output encode_list of 2l messages.
struct RoundFunction {
  SeededSampler sampler;
  std::size_t rounds = 1;

  std::size_t k_bits() const { return ceil_log2(rounds); }
  BitString k_encoding(std::size_t k) const { return BitString::from_uint(k - 1, k_bits()); }
  BitString eval(int lambda, const BitString& input) const;
  FunctionFamily family() const;
};
RoundFunction round_function(const SeededSampler& s, std::size_t rounds);
std::vector<BitString> sampler_transcript(const SeededSampler& s, std::size_t rounds, int lambda, const BitString& r);

// r -> puzz of S(r) = encode_pair(puzz, ans).
FunctionFamily puzzle_projection(const SeededSampler& s);

enum class InverterKind { Canonical, Noisy, Fixed };
struct InverterSpec {
  InverterKind kind = InverterKind::Canonical;
  Rational eta = 0;   // Noisy: weight of the uniform component
  BitString fixed;    // Fixed: constant output
  std::string name() const;
};
// Canonical: uniform over the preimage, uniform over the domain off the image.
Channel make_inverter(const FunctionFamily& f, const InverterSpec& spec);

// SD of ((k, r), f(k, r)) and (R(f(k, r)), f(k, r)) for uniform r and fixed k.
Rational fixed_k_distance(const RoundFunction& rf, const Channel& r, int lambda, std::size_t k);

// The prover B_q: on (tau_{k-1}, c_k) run (k', r') <- R(k, tau_{k-1}, c_k) and
// reply a'_{k'} of S(r'). A k' beyond l, or an a'_{k'} of the wrong width, is
// replaced by zeros. Throws InverterRangeError on a wrong-length R output.
Party transcript_attack(const RoundFunction& rf, const Channel& inverter, const Party& counterparty);

// D_k: <A, C> through round k - 1, then B_q; C keeps its seed. k in [1, l + 1].
ExactDistribution hybrid_distribution(const Party& a, const Party& c, const Party& b_q, int lambda, std::size_t k);

GameReport hybrid_audit(const Party& a, const Party& c, const RoundFunction& rf, const Channel& inverter, int lambda,
                        const std::string& inverter_name = "custom");

// A(puzz): r <- R(puzz), output the ans of S(r).
Channel puzzle_attack(const SeededSampler& s, const Channel& inverter);
GameReport puzzle_attack_audit(const OneWayPuzzle& puzzle, const SeededSampler& s, const Channel& inverter,
                               int lambda, const std::string& inverter_name = "custom");

// Moves eps of mass off the heaviest outcomes onto `target`, which must lie
// outside the support; the result is at SD exactly eps from law.
ExactDistribution shift_mass(const ExactDistribution& law, const Rational& eps, const BitString& target);
// Off-support targets that keep the shape: one answer bit flipped in a
// transcript encoding (last message first) or in the ans half of a pair. A
// transcript law with full support at its shape gets a last message one bit
// longer instead.
BitString off_support_transcript(const ExactDistribution& transcripts);
BitString off_support_pair(const ExactDistribution& pairs);

}  // namespace pqlab
