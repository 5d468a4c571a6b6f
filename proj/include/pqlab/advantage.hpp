// Non-interactive proof of quantumness from a sampler A via time-bounded prefix
// complexity. The prover sends N samples Y = y_1..y_N; the verifier accepts iff
// K^t(Y) >= log2(1/p_Y) - k with p_Y = prod_i Pr[y_i <- A], i.e. iff
// 2^(K^t(Y) + k) * p_Y >= 1, decided exactly.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqlab/core.hpp"
#include "pqlab/kolmogorov.hpp"
#include "pqlab/protocols.hpp"
#include "pqlab/report.hpp"

namespace pqlab {

struct EmptyAcceptingSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AdvantageProtocol {
  SeededSampler base;
  std::uint64_t q = 1;
  unsigned k = 1;
  std::optional<std::size_t> n_override;
  std::uint64_t budget = 1'000'000;

  // max(q^4, lambda) unless overridden.
  std::size_t repetitions(int lambda) const;
  // m(lambda) * N(lambda) >= lambda; reported, not enforced.
  bool length_precondition(int lambda) const;
};

AdvantageProtocol make_advantage_protocol(const SeededSampler& a, std::uint64_t q, unsigned k = 1,
                                          std::optional<std::size_t> n = std::nullopt);

// U for the verifier at lambda: literal, run-length, then the decoder for A^N.
// `extra` machines are appended after it.
UniversalMachine advantage_machine(const AdvantageProtocol& proto, int lambda,
                                   const std::vector<RegisteredMachine>& extra = {});
RegisteredMachine sampler_coding_machine(const Sampler& s, int lambda, std::size_t seed_bits, std::size_t out_bits);

enum class Verdict { Accept, Reject, ZeroMassWitness };

struct TupleVerdict {
  Verdict verdict = Verdict::Reject;
  Rational mass;                    // p_Y
  std::optional<std::size_t> kt;    // nullopt: above max_len
  std::size_t max_len = 0;
};

// Searches programs up to max(2|Y| + 4, ceil(log2 1/p_Y), min_len), so the
// verdict is always decided; throws BudgetExceeded past the program-length cap.
TupleVerdict verify_tuple(const AdvantageProtocol& proto, const UniversalMachine& u, int lambda,
                          const BitString& tuple, std::size_t min_len = 0);

IVPoQ build_advantage_protocol(const AdvantageProtocol& proto);
IVPoQ build_advantage_protocol(const SeededSampler& a, std::uint64_t q);

// Exact honest acceptance over A^N.
Rational honest_acceptance(const AdvantageProtocol& proto, int lambda);

// Output a uniformly chosen coordinate of a sample of p_star. Not a seeded
// sampler in general: N need not be a power of two.
Sampler solver_to_sampler(const SeededSampler& p_star, std::size_t n);

// Every inequality from "the cheater is accepted with probability 1 - delta" to
// SD(A, B) <= delta + sqrt(ln2 * (max(0, M) + log2(1/(1 - delta))) / (2N)).
// The cheater's own decoder is registered in U, so the upper end of the K^t
// sandwich holds constructively. Throws EmptyAcceptingSet when delta = 1.
GameReport soundness_bound_audit(const AdvantageProtocol& proto, const SeededSampler& p_star, int lambda);

struct GoodSet {
  std::vector<BitString> good;
  Rational miss_mass;  // Pr_{x<-Q}[x not in Good]
  Rational bound;      // 6 p SD(Q, S)
};
// Good = {x : |Q(x) - S(x)| <= Q(x) / (3p)}.
GoodSet good_set(const ExactDistribution& q, const ExactDistribution& s, const Rational& p);
GoodSet good_set(const SeededSampler& q, const SeededSampler& s, int lambda, const Rational& p);

}  // namespace pqlab
