// A small self-delimiting universal machine and exact time-bounded prefix complexity.
//
// Programs for U have the form 1^n 0 p and hand p to registry entry n (1-based).
// n = 0 or n beyond the registry diverges. Every transducer reads its input with a
// one-way head; a program is valid when the transducer halts with the head on its
// last bit. Step costs: one step per bit read, one per bit written, plus any explicit
// tick a transducer charges for internal work.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pqlab/core.hpp"

namespace pqlab {

enum class TapeState { Running, NeedInput, OutOfSteps, Diverged, Mismatch };

class Tape {
 public:
  Tape(const BitString& program, std::uint64_t budget, const BitString* target = nullptr)
      : prog_(program), budget_(budget), target_(target) {}

  bool read(int& b);
  bool write(int b);
  bool write(const BitString& s);
  bool tick(std::uint64_t n);
  bool diverge() {
    state_ = TapeState::Diverged;
    return false;
  }
  // Search hint: the output this run is being tested against. Transducers may
  // stop early once the output provably differs; unhinted runs never see it.
  const BitString* target() const { return target_; }
  bool mismatch() {
    state_ = TapeState::Mismatch;
    return false;
  }

  std::size_t consumed() const { return pos_; }
  std::uint64_t steps() const { return steps_; }
  const BitString& output() const { return out_; }
  TapeState state() const { return state_; }

 private:
  const BitString& prog_;
  std::uint64_t budget_;
  const BitString* target_;
  std::size_t pos_ = 0;
  std::uint64_t steps_ = 0;
  BitString out_;
  TapeState state_ = TapeState::Running;
};

struct RegisteredMachine {
  std::string description;
  // Returns true on halting; otherwise the tape state says why it stopped.
  std::function<bool(Tape&)> run;
};

class UniversalMachine {
 public:
  UniversalMachine() = default;
  explicit UniversalMachine(std::vector<RegisteredMachine> registry) : registry_(std::move(registry)) {}

  std::size_t add(RegisteredMachine m) {
    registry_.push_back(std::move(m));
    return registry_.size();
  }
  std::size_t size() const { return registry_.size(); }
  const RegisteredMachine& machine(std::size_t index) const { return registry_.at(index - 1); }

 private:
  std::vector<RegisteredMachine> registry_;
};

enum class RunStatus { Output, NonHalting, InvalidProgram };

struct RunResult {
  RunStatus status;
  BitString output;
  std::uint64_t steps = 0;
};

RunResult run_program(const UniversalMachine& u, const BitString& program, std::uint64_t budget);

// Raw execution, exposing the stop reason; used by the searches.
struct RawRun {
  TapeState state;
  bool halted;
  std::size_t consumed;
  BitString output;
};
RawRun run_raw(const UniversalMachine& u, const BitString& program, std::uint64_t budget,
               const BitString* target = nullptr);

struct KtResult {
  std::optional<std::size_t> value;  // nullopt = Infinite
  BitString witness;
  std::uint64_t budget = 0;
  std::size_t max_len = 0;
};

std::size_t default_max_len(const BitString& x);
KtResult kt_complexity(const UniversalMachine& u, const BitString& x);
KtResult kt_complexity(const UniversalMachine& u, const BitString& x, std::uint64_t budget, std::size_t max_len);

struct ValidProgram {
  BitString program;
  BitString output;
};
// Every valid program of length <= max_len, in length-then-lexicographic order.
std::vector<ValidProgram> enumerate_valid_programs(const UniversalMachine& u, std::size_t max_len,
                                                   std::uint64_t budget);

struct PrefixCode {
  std::map<BitString, BitString> codeword;  // source string -> c(x)
  std::vector<BitString> order;             // descending mass, ties by x
  ExactDistribution source;
};

PrefixCode shannon_fano(const ExactDistribution& p);
// floor(log2(1/p)) + 1 for 0 < p <= 1.
std::size_t shannon_fano_length(const Rational& p);

Rational kraft_sum(const std::vector<BitString>& programs);
bool is_prefix_free(std::vector<BitString> programs);

RegisteredMachine literal_machine();
RegisteredMachine run_length_machine();

// Decoder for the Shannon-Fano code of laws[lambda]. Body format: 1^l 0 bin(lambda)
// with l = bit_length(lambda), then a codeword. compute_cost[lambda] steps are
// charged once lambda is parsed (the brute-force pmf computation).
RegisteredMachine coding_machine(std::map<int, ExactDistribution> laws, std::map<int, std::uint64_t> compute_cost,
                                 std::string description = "shannon-fano decoder");
RegisteredMachine coding_machine(const ExactDistribution& p, int lambda, std::uint64_t compute_cost,
                                 std::string description = "shannon-fano decoder");
// Cost of the U selector plus the lambda header for registry index `index`.
std::size_t coding_header_cost(std::size_t index, int lambda);
std::uint64_t sampler_compute_cost(std::size_t seed_bits, std::size_t out_bits);

// Literal (1) and run-length (2).
UniversalMachine default_universal_machine();

}  // namespace pqlab
