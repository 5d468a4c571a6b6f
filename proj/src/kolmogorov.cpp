#include "pqlab/kolmogorov.hpp"

#include <algorithm>
#include <unordered_set>

namespace pqlab {

bool Tape::read(int& b) {
  if (steps_ >= budget_) {
    state_ = TapeState::OutOfSteps;
    return false;
  }
  ++steps_;
  if (pos_ >= prog_.size()) {
    state_ = TapeState::NeedInput;
    return false;
  }
  b = prog_[pos_++];
  return true;
}

bool Tape::write(int b) {
  if (steps_ >= budget_) {
    state_ = TapeState::OutOfSteps;
    return false;
  }
  ++steps_;
  out_.push_back(b);
  if (target_ && (out_.size() > target_->size() || (*target_)[out_.size() - 1] != b)) return mismatch();
  return true;
}

bool Tape::write(const BitString& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!write(s[i])) return false;
  return true;
}

bool Tape::tick(std::uint64_t n) {
  if (n > budget_ - steps_) {
    steps_ = budget_;
    state_ = TapeState::OutOfSteps;
    return false;
  }
  steps_ += n;
  return true;
}

RawRun run_raw(const UniversalMachine& u, const BitString& program, std::uint64_t budget, const BitString* target) {
  Tape t(program, budget, target);
  bool halted = false;
  std::size_t n = 0;
  int b = 0;
  for (;;) {
    if (!t.read(b)) break;
    if (b == 0) {
      if (n == 0) t.diverge();
      else halted = u.machine(n).run(t);
      break;
    }
    if (++n > u.size()) {
      t.diverge();
      break;
    }
  }
  return {t.state(), halted, t.consumed(), t.output()};
}

RunResult run_program(const UniversalMachine& u, const BitString& program, std::uint64_t budget) {
  RawRun r = run_raw(u, program, budget);
  if (r.halted) {
    if (r.consumed == program.size()) return {RunStatus::Output, r.output, 0};
    return {RunStatus::InvalidProgram, {}, 0};
  }
  if (r.state == TapeState::NeedInput) return {RunStatus::InvalidProgram, {}, 0};
  return {RunStatus::NonHalting, {}, 0};
}

std::size_t default_max_len(const BitString& x) { return 2 * x.size() + 2 + 2; }

KtResult kt_complexity(const UniversalMachine& u, const BitString& x) {
  return kt_complexity(u, x, limits().max_steps, default_max_len(x));
}

KtResult kt_complexity(const UniversalMachine& u, const BitString& x, std::uint64_t budget, std::size_t max_len) {
  if (max_len > static_cast<std::size_t>(limits().max_program_len))
    throw BudgetExceeded("program search length " + std::to_string(max_len) + " exceeds cap " +
                         std::to_string(limits().max_program_len));
  KtResult res;
  res.budget = budget;
  res.max_len = max_len;
  std::size_t best = max_len + 1;
  BitString prefix;
  // Depth-first over the program tree, 0-branch first: the first hit at a given
  // length is the lexicographically smallest one, and later hits must be shorter.
  std::function<void()> dfs = [&]() {
    RawRun r = run_raw(u, prefix, budget, &x);
    if (r.halted) {
      if (r.consumed == prefix.size() && r.output == x && prefix.size() < best) {
        best = prefix.size();
        res.value = best;
        res.witness = prefix;
      }
      return;
    }
    if (r.state != TapeState::NeedInput) return;
    for (int b = 0; b < 2; ++b) {
      if (prefix.size() + 1 >= best) return;
      prefix.push_back(b);
      dfs();
      prefix = prefix.prefix(prefix.size() - 1);
    }
  };
  dfs();
  return res;
}

std::vector<ValidProgram> enumerate_valid_programs(const UniversalMachine& u, std::size_t max_len,
                                                   std::uint64_t budget) {
  if (max_len > static_cast<std::size_t>(limits().max_program_len))
    throw BudgetExceeded("program length " + std::to_string(max_len) + " exceeds cap " +
                         std::to_string(limits().max_program_len));
  std::vector<ValidProgram> out;
  BitString prefix;
  std::function<void()> dfs = [&]() {
    RawRun r = run_raw(u, prefix, budget);
    if (r.halted) {
      if (r.consumed == prefix.size()) out.push_back({prefix, r.output});
      return;
    }
    if (r.state != TapeState::NeedInput || prefix.size() >= max_len) return;
    for (int b = 0; b < 2; ++b) {
      prefix.push_back(b);
      dfs();
      prefix = prefix.prefix(prefix.size() - 1);
    }
  };
  dfs();
  std::sort(out.begin(), out.end(), [](const ValidProgram& a, const ValidProgram& b) {
    if (a.program.size() != b.program.size()) return a.program.size() < b.program.size();
    return a.program < b.program;
  });
  return out;
}

std::size_t shannon_fano_length(const Rational& p) {
  if (p <= 0 || p > 1) throw std::invalid_argument("shannon_fano_length: mass outside (0,1]");
  std::size_t k = 0;
  while (pow2_times_at_least_one(-static_cast<long>(k + 1), 1 / p)) ++k;
  return k + 1;
}

PrefixCode shannon_fano(const ExactDistribution& p) {
  PrefixCode code;
  code.source = p;
  code.order = p.support();
  std::stable_sort(code.order.begin(), code.order.end(), [&](const BitString& a, const BitString& b) {
    Rational pa = p.mass(a), pb = p.mass(b);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  Rational cumulative = 0;
  for (const auto& x : code.order) {
    Rational px = p.mass(x);
    std::size_t len = shannon_fano_length(px);
    Rational frac = cumulative;
    BitString w;
    for (std::size_t i = 0; i < len; ++i) {
      frac *= 2;
      if (frac >= 1) {
        w.push_back(1);
        frac -= 1;
      } else {
        w.push_back(0);
      }
    }
    code.codeword.emplace(x, w);
    cumulative += px;
  }
  return code;
}

Rational kraft_sum(const std::vector<BitString>& programs) {
  Rational s = 0;
  for (const auto& p : programs) s += pow2(-static_cast<int>(p.size()));
  return s;
}

bool is_prefix_free(std::vector<BitString> programs) {
  std::sort(programs.begin(), programs.end());
  for (std::size_t i = 0; i + 1 < programs.size(); ++i)
    if (programs[i].is_prefix_of(programs[i + 1])) return false;
  return true;
}

RegisteredMachine literal_machine() {
  return {"literal: 1^l 0 x with |x| = l", [](Tape& t) {
            std::size_t l = 0;
            int b = 0;
            for (;;) {
              if (!t.read(b)) return false;
              if (b == 0) break;
              if (++l > 64) return t.diverge();
              if (t.target() && l > t.target()->size()) return t.mismatch();
            }
            if (t.target() && l != t.target()->size()) return t.mismatch();
            for (std::size_t i = 0; i < l; ++i)
              if (!t.read(b) || !t.write(b)) return false;
            return true;
          }};
}

namespace {

// Reads 1^a 0 then a bits; a is capped at 63 (longer headers diverge).
bool read_counted(Tape& t, std::uint64_t& value, std::size_t& width) {
  int b = 0;
  width = 0;
  for (;;) {
    if (!t.read(b)) return false;
    if (b == 0) break;
    if (++width > 63) return t.diverge();
  }
  value = 0;
  for (std::size_t i = 0; i < width; ++i) {
    if (!t.read(b)) return false;
    value = value << 1 | static_cast<std::uint64_t>(b);
  }
  return true;
}

}  // namespace

RegisteredMachine run_length_machine() {
  return {"run-length: 1^a 0 bin_a(c) 1^b 0 pat with |pat| = b, outputs pat^c", [](Tape& t) {
            std::uint64_t c = 0;
            std::size_t a = 0;
            if (!read_counted(t, c, a)) return false;
            std::size_t b = 0;
            int bit = 0;
            for (;;) {
              if (!t.read(bit)) return false;
              if (bit == 0) break;
              if (++b > 63) return t.diverge();
            }
            if (t.target() && static_cast<unsigned __int128>(c) * b != t.target()->size()) return t.mismatch();
            BitString pat;
            for (std::size_t i = 0; i < b; ++i) {
              if (!t.read(bit)) return false;
              pat.push_back(bit);
              if (c >= 1 && !t.write(bit)) return false;
            }
            for (std::uint64_t k = 1; k < c; ++k)
              if (!t.write(pat)) return false;
            return true;
          }};
}

namespace {

struct CodingEntry {
  PrefixCode code;
  std::map<BitString, BitString> decode;
  std::unordered_set<BitString> prefixes;
  std::uint64_t cost = 0;
};

struct CodingData {
  std::map<int, CodingEntry> by_lambda;
  std::unordered_set<BitString> lambda_prefixes;  // prefixes of bin(lambda), supported lambdas only
  std::size_t max_bits = 0;
};

}  // namespace

RegisteredMachine coding_machine(std::map<int, ExactDistribution> laws, std::map<int, std::uint64_t> compute_cost,
                                 std::string description) {
  auto data = std::make_shared<CodingData>();
  for (auto& [lambda, law] : laws) {
    CodingEntry e;
    e.code = shannon_fano(law);
    for (const auto& [x, w] : e.code.codeword) {
      e.decode.emplace(w, x);
      for (std::size_t i = 0; i < w.size(); ++i) e.prefixes.insert(w.prefix(i));
    }
    auto it = compute_cost.find(lambda);
    e.cost = it == compute_cost.end() ? 0 : it->second;
    BitString bin = BitString::from_uint(static_cast<std::uint64_t>(lambda), bit_length(lambda));
    for (std::size_t i = 0; i <= bin.size(); ++i) data->lambda_prefixes.insert(bin.prefix(i));
    data->max_bits = std::max(data->max_bits, bin.size());
    data->by_lambda.emplace(lambda, std::move(e));
  }
  return {std::move(description), [data](Tape& t) {
            std::size_t l = 0;
            int b = 0;
            for (;;) {
              if (!t.read(b)) return false;
              if (b == 0) break;
              if (++l > data->max_bits) return t.diverge();
            }
            BitString hat;
            for (std::size_t i = 0; i < l; ++i) {
              if (!t.read(b)) return false;
              hat.push_back(b);
              if (!data->lambda_prefixes.count(hat)) return t.diverge();
            }
            auto it = hat.empty() ? data->by_lambda.find(0)
                                  : data->by_lambda.find(static_cast<int>(hat.to_uint()));
            if (it == data->by_lambda.end() || bit_length(static_cast<std::uint64_t>(it->first)) != l)
              return t.diverge();
            const CodingEntry& e = it->second;
            if (!t.tick(e.cost)) return false;
            const BitString* want = nullptr;
            if (t.target()) {
              auto c = e.code.codeword.find(*t.target());
              if (c == e.code.codeword.end()) return t.mismatch();
              want = &c->second;
            }
            BitString y;
            for (;;) {
              if (!t.read(b)) return false;
              y.push_back(b);
              if (want && !y.is_prefix_of(*want)) return t.mismatch();
              auto d = e.decode.find(y);
              if (d != e.decode.end()) return t.write(d->second);
              if (!e.prefixes.count(y)) return t.diverge();
            }
          }};
}

RegisteredMachine coding_machine(const ExactDistribution& p, int lambda, std::uint64_t compute_cost,
                                 std::string description) {
  return coding_machine(std::map<int, ExactDistribution>{{lambda, p}},
                        std::map<int, std::uint64_t>{{lambda, compute_cost}}, std::move(description));
}

std::size_t coding_header_cost(std::size_t index, int lambda) {
  return (index + 1) + 2 * bit_length(static_cast<std::uint64_t>(lambda)) + 1;
}

std::uint64_t sampler_compute_cost(std::size_t seed_bits, std::size_t out_bits) {
  return (std::uint64_t{1} << seed_bits) * (out_bits + 1);
}

UniversalMachine default_universal_machine() {
  return UniversalMachine({literal_machine(), run_length_machine()});
}

}  // namespace pqlab
