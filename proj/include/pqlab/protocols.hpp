// Two-party protocols over a classical channel.
//
// A protocol of l rounds produces messages c_1 a_1 ... c_l a_l: the verifier (or
// challenger) speaks first in every round, the prover answers. A non-interactive
// protocol is one round whose verifier message has width 0. Transcripts are keyed
// by encode_list(messages); sender tags follow from the position.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pqlab/core.hpp"
#include "pqlab/games.hpp"

namespace pqlab {

struct WidthViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotNonInteractive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The seed law has fixed-width support. next_message may return a non-point law
// for fresh randomness drawn after the seed; execute() rejects that.
struct Party {
  std::string id;
  std::function<ExactDistribution(int)> seed_dist;
  std::function<std::size_t(int)> rounds;
  std::function<std::size_t(int, std::size_t)> width;  // width of this party's k-th message, k >= 1
  std::function<ExactDistribution(int, const BitString& seed, const std::vector<BitString>& partial)> next_message;
};

std::size_t seed_width(const Party& p, int lambda);

struct Transcript {
  int lambda = 0;
  std::vector<BitString> messages;

  std::vector<std::pair<char, BitString>> entries() const;  // 'V' / 'P'
  BitString encode() const { return encode_list(messages); }
  static Transcript decode(int lambda, const BitString& s);
};

Transcript execute(const Party& verifier, const Party& prover, int lambda, const BitString& seed_v,
                   const BitString& seed_p);
// Law of encode_list(messages) over both seed laws and any message randomness.
ExactDistribution transcript_distribution(const Party& verifier, const Party& prover, int lambda);

struct IVPoQ {
  std::string id;
  Party prover;
  Party verifier1;
  std::function<bool(int, const std::vector<BitString>&)> verifier2;
  std::function<Rational(int)> completeness;
  std::function<Rational(int)> soundness;
  SigmaSet sigma = SigmaSet::all();
  bool public_coin = false;
};

Rational ivpoq_accept_prob(const IVPoQ& scheme, const Party& prover, int lambda);
// Exact acceptance of verifier2 under an arbitrary transcript law.
Rational accept_prob(const IVPoQ& scheme, const ExactDistribution& transcripts, int lambda);

// Party builders.
Party constant_party(std::string id, std::size_t rounds, std::vector<BitString> messages);
// Sends fresh seed slices of the given widths.
Party public_coin_verifier(std::string id, std::function<std::vector<std::size_t>(int)> widths);
// Non-interactive prover: one message, the sampler's output.
Party prover_from_sampler(const SeededSampler& s);
Party prover_from_law(std::string id, std::function<ExactDistribution(int)> law, std::function<std::size_t(int)> out_len);
// One round, empty message.
Party silent_verifier();
bool is_public_coin(const Party& verifier, int lambda);

// Sequential composition: A's rounds, then B's, on independent seeds.
IVPoQ and_compose_ivpoq(const IVPoQ& a, const IVPoQ& b);
// Cheater splitting for the composite. The first plays the A part of p_star. The
// second samples p_star's seed together with a simulated A part against a's
// verifier, then plays the B part.
Party split_prover_first(const IVPoQ& a, const Party& p_star);
Party split_prover_second(const IVPoQ& a, const IVPoQ& b, const Party& p_star);

// puzz'' = encode_pair(puzz, puzz'), ans'' = encode_pair(ans, ans').
OneWayPuzzle and_compose_owpuzz(const OneWayPuzzle& a, const OneWayPuzzle& b);
// Adversary for the first (second) factor: sample the other factor's puzzle
// itself, attack the composite, keep its own half of the answer.
Channel split_puzzle_adversary_first(const OneWayPuzzle& b, const Channel& adv);
Channel split_puzzle_adversary_second(const OneWayPuzzle& a, const Channel& adv);

std::pair<Party, Party> ivpoq_to_intqas(const IVPoQ& scheme);  // (verifier1, prover)

// puzz = 1^lambda, ans = the transcript encoding.
OneWayPuzzle owpuzz_from_noninteractive_ivpoq(const IVPoQ& scheme);

}  // namespace pqlab
