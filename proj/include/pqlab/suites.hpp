// Report builders behind the suite entries and the command line. Names refer to
// corpus ids; each builder returns one self-contained report.
#pragma once

#include <string>
#include <vector>

#include "pqlab/core.hpp"
#include "pqlab/report.hpp"

namespace pqlab {

// Minimal witnesses of every x with |x| <= max_x_len under the default machine.
GameReport kraft_witness_report(std::size_t max_x_len);
// All valid programs up to program_len.
GameReport kraft_programs_report(std::size_t program_len);
// Mass of {x : K^t(x) >= log2(1/p_x) - k} against 1 - 2^-k, for each k.
GameReport incompressibility_report(const std::string& name, const ExactDistribution& p,
                                    const std::vector<int>& ks);
// Named laws over strings of at most max_x_len bits.
std::vector<std::pair<std::string, ExactDistribution>> incompressibility_corpus(std::size_t max_x_len);
GameReport shannon_fano_report(const std::string& name, const ExactDistribution& p);
// count laws with support in [1, max_support] over width-bit strings, integer
// weights drawn from mt19937_64(seed).
std::vector<std::pair<std::string, ExactDistribution>> random_laws(std::uint64_t seed, std::size_t count,
                                                                   std::size_t max_support, std::size_t width);

GameReport advantage_completeness_report(const std::string& sampler, int lambda, std::size_t n, unsigned k,
                                         std::uint64_t q);
// A law at SD exactly eps from the honest prover's is accepted with probability
// at least completeness - eps.
GameReport advantage_shift_report(const std::string& sampler, int lambda, const Rational& eps);
GameReport soundness_report(const std::string& sampler, const std::string& cheater, int lambda, std::size_t n,
                            unsigned k);
GameReport solver_sampler_report(const std::string& sampler, const std::string& cheater, int lambda, std::size_t n);
GameReport good_set_report(const std::string& sampler, const std::string& perturbation, int lambda,
                           const Rational& p);
// A cheater that is never accepted must raise EmptyAcceptingSet.
GameReport empty_accepting_set_report(int lambda);

// S is the exact transcript law moved eps away from <A, C>.
GameReport transcript_attack_report(const std::string& protocol, const Rational& eps, const std::string& inverter,
                                    const Rational& eta, int lambda);
// S is the puzzle's sampling law moved eps away.
GameReport puzzle_attack_report(const std::string& puzzle, const Rational& eps, const std::string& inverter,
                                const Rational& eta, int lambda);

GameReport ivpoq_composition_report(const std::string& a, const std::string& b,
                                    const std::vector<std::string>& cheaters, int lambda);
GameReport owpuzz_composition_report(const std::string& a, const std::string& b, int lambda);
GameReport intqas_shift_report(const std::string& base, const Rational& eps, int lambda);
GameReport noninteractive_puzzle_report(const std::string& base, int lambda);
GameReport not_noninteractive_report(const std::string& base, int lambda);

GameReport zk_completeness_report(const std::string& base, const std::string& commit, int lambda);
GameReport zk_simulator_report(const std::string& base, const std::string& commit, int lambda);
GameReport zk_hybrids_report(const std::string& base, const std::string& commit, const std::string& cheater,
                             int lambda);
GameReport zk_commitment_report(const std::string& commit, int lambda, std::size_t width);
GameReport zk_premise_report(const std::string& base, const std::string& commit, int lambda);
GameReport zk_not_public_coin_report(const std::string& base, const std::string& commit);

GameReport owf_game_report(const std::string& f, const std::string& adversary, int lambda);
GameReport owpuzz_game_report(const std::string& puzzle, const std::string& adversary, int lambda);
GameReport owf_to_owpuzz_report(const std::string& f, const std::string& adversary, int lambda);
GameReport pad_report(const std::string& f, const std::string& adversary, unsigned c, std::size_t i);
// Schedule n(lambda) = lambda^2 at input length l.
GameReport lift_report(const std::string& f, const std::string& adversary, std::size_t l);
// config: candidates joined by '+', the last one a function id; the g-adversary
// is the named adversary against the universal function.
GameReport universal_report(const std::string& config, const std::string& adversary);

}  // namespace pqlab
