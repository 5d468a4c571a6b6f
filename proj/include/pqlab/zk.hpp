// Commit-and-open compiler for public-coin protocols, with a toy commitment
// com = f(m || rho) whose extractor and opening value are brute force.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pqlab/core.hpp"
#include "pqlab/games.hpp"
#include "pqlab/protocols.hpp"
#include "pqlab/report.hpp"

namespace pqlab {

struct NotPublicCoin : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BindingFailure {
  BitString commitment;
  BitString first;
  BitString second;
};

// Messages of any width w are committed with salt_width(lambda) bits of salt;
// f must accept inputs of length w + salt. Openers are tabulated per (lambda, w).
class CommitScheme {
 public:
  CommitScheme(std::string id, FunctionFamily f, std::function<std::size_t(int)> salt_width);

  const std::string& id() const { return id_; }
  std::size_t salt_width(int lambda) const { return salt_width_(lambda); }
  BitString commit(int lambda, const BitString& m, const BitString& salt) const;
  bool open(int lambda, const BitString& com, const BitString& m, const BitString& salt) const;
  ExactDistribution commitment_law(int lambda, const BitString& m) const;
  std::size_t commitment_width(int lambda, std::size_t w) const;

  // Lexicographically first message with an opening, or bottom.
  std::optional<BitString> extract(int lambda, std::size_t w, const BitString& com) const;
  // The unique message with an opening, or bottom.
  std::optional<BitString> val(int lambda, std::size_t w, const BitString& com) const;
  // Max over message pairs of SD between commitment laws.
  Rational hiding_distance(int lambda, std::size_t w) const;
  std::vector<BindingFailure> binding_failures(int lambda, std::size_t w) const;

 private:
  const std::map<BitString, std::vector<BitString>>& openers(int lambda, std::size_t w) const;

  std::string id_;
  FunctionFamily f_;
  std::function<std::size_t(int)> salt_width_;
  std::shared_ptr<std::map<std::pair<int, std::size_t>, std::map<BitString, std::vector<BitString>>>> table_;
};

// f is applied to m || rho; salt_width may be 0.
CommitScheme toy_extractable_commitment(const FunctionFamily& f, std::size_t salt_width);

struct ZkIVPoQ {
  IVPoQ base;
  CommitScheme commit;
  IVPoQ compiled;
};

// Round i: the verifier sends the base coins v_i, the prover commits to the base
// prover's p_i with fresh salt. verifier2 takes val of every commitment, rejects
// on bottom, and runs the base verifier2. The base prover must be deterministic
// given its seed so that p_i can be recomputed.
ZkIVPoQ compile_zk(const IVPoQ& base, const CommitScheme& commit);

// Base prover widths at lambda.
std::vector<std::size_t> prover_widths(const IVPoQ& scheme, int lambda);

// Pr[base accepts and some honest commitment has no unique opener].
Rational binding_failure_acceptance(const ZkIVPoQ& zk, int lambda);

GameReport compiler_completeness_audit(const ZkIVPoQ& zk, int lambda);

// Coins plus commitments to zero messages.
SeededSampler hv_simulator(const ZkIVPoQ& zk);
GameReport simulator_audit(const ZkIVPoQ& zk, int lambda);

// P*_j answers the base verifier by opening the cheater's commitments with the
// extractor in rounds <= j and with val in later rounds; bottom aborts.
Rational hybrid_acceptance(const ZkIVPoQ& zk, const Party& cheater, int lambda, std::size_t j);
GameReport hybrid_provers_audit(const ZkIVPoQ& zk, const Party& cheater, int lambda);

// Extractor agreement over the whole commitment space at message width w.
GameReport commitment_audit(const CommitScheme& c, int lambda, std::size_t w);

GameReport hvszk_transcript_premise_check(const IVPoQ& scheme, const SeededSampler& simulator, int lambda);

}  // namespace pqlab
