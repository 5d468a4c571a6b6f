// Named toy instances shared by the suite and the command line. Every lookup
// throws UnknownId for a name outside its list.
#pragma once

#include <string>
#include <vector>

#include "pqlab/advantage.hpp"
#include "pqlab/games.hpp"
#include "pqlab/protocols.hpp"
#include "pqlab/reductions.hpp"
#include "pqlab/zk.hpp"

namespace pqlab {

struct UnknownId : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Base samplers A for the advantage protocol.
const std::vector<std::string>& sampler_ids();
SeededSampler corpus_sampler(const std::string& id);

// Cheating solvers emitting n blocks of base.out_len bits:
// honest, repeat, uniform, ones.
const std::vector<std::string>& cheater_ids();
SeededSampler corpus_cheater(const std::string& id, const SeededSampler& base, std::size_t n);

// Simulators S for the good-set computation, as laws over Q's output width:
// same, mix-uniform, shift, uniform, tilt.
const std::vector<std::string>& perturbation_ids();
ExactDistribution corpus_perturbation(const std::string& id, const ExactDistribution& q, std::size_t width);

// Function families with n(lambda) = lambda.
const std::vector<std::string>& function_ids();
FunctionFamily corpus_function(const std::string& id);

// Adversaries against f: canonical, zeros, uniform, echo.
const std::vector<std::string>& owf_adversary_ids();
Channel corpus_owf_adversary(const std::string& id, const FunctionFamily& f);

// Puzzle adversary for owf_to_owpuzz(f): reads y out of 1^n 0 y and runs a.
Channel puzzle_adversary_from_owf(const Channel& a);

// owf:<function id>, coin, lossy.
std::vector<std::string> puzzle_ids();
OneWayPuzzle corpus_puzzle(const std::string& id);

// Two-party toy protocols (A, C) for the transcript attack.
struct ToyProtocol {
  Party a;
  Party c;
  std::size_t rounds = 1;
};
const std::vector<std::string>& toy_protocol_ids();
ToyProtocol corpus_toy_protocol(const std::string& id);

// IV-PoQ bases: always, rej11, empty, advantage-uniform1, nonint-9/10,
// nonint-4/5, private-coin.
const std::vector<std::string>& base_ids();
IVPoQ corpus_base(const std::string& id);

// Commitments: identity, perm2, xorfold, const, partial.
const std::vector<std::string>& commit_ids();
CommitScheme corpus_commit(const std::string& id);
bool commit_is_perfectly_binding(const std::string& id);

// Cheating provers that follow a scheme's prover widths: honest, zeros, ones,
// correlated, echo.
const std::vector<std::string>& protocol_cheater_ids();
Party corpus_protocol_cheater(const std::string& id, const IVPoQ& scheme);

// Cheaters against a compiled scheme: the protocol cheaters plus
// openable-junk and mixed.
const std::vector<std::string>& zk_cheater_ids();
Party corpus_zk_cheater(const std::string& id, const ZkIVPoQ& zk);

// Inverter kinds: canonical, noisy, fixed.
InverterSpec corpus_inverter(const std::string& kind, const Rational& eta, std::size_t fixed_width);

}  // namespace pqlab
