#include "pqlab/games.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace pqlab {

SigmaSet SigmaSet::all() {
  return {"all", [](int) { return true; }};
}

SigmaSet SigmaSet::finite(std::vector<int> members) {
  std::string d = "finite{";
  for (std::size_t i = 0; i < members.size(); ++i) d += (i ? "," : "") + std::to_string(members[i]);
  std::set<int> m(members.begin(), members.end());
  return {d + "}", [m](int l) { return m.count(l) > 0; }};
}

SigmaSet SigmaSet::cofinite(std::vector<int> excluded) {
  std::string d = "cofinite-minus{";
  for (std::size_t i = 0; i < excluded.size(); ++i) d += (i ? "," : "") + std::to_string(excluded[i]);
  std::set<int> m(excluded.begin(), excluded.end());
  return {d + "}", [m](int l) { return m.count(l) == 0; }};
}

SigmaSet SigmaSet::arithmetic(int modulus, int residue) {
  return {"lambda = " + std::to_string(residue) + " mod " + std::to_string(modulus),
          [modulus, residue](int l) { return ((l % modulus) + modulus) % modulus == residue; }};
}

SigmaSet SigmaSet::intersect(const SigmaSet& o) const {
  auto a = contains, b = o.contains;
  return {"(" + description + ") & (" + o.description + ")", [a, b](int l) { return a(l) && b(l); }};
}

OneWayPuzzle puzzle_from_sampler(std::string id, const SeededSampler& samp,
                                 std::function<bool(int, const BitString&, const BitString&)> ver) {
  return {std::move(id), [samp](int lambda) { return exact_pmf(samp, lambda); }, std::move(ver)};
}

ExactDistribution input_image_pairs(const FunctionFamily& f, int lambda) {
  std::size_t n = f.in_len(lambda);
  check_seed_space(n, limits().max_seed_space);
  MassAccumulator acc;
  Rational w = pow2(-static_cast<int>(n));
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString x = BitString::from_uint(v, n);
    acc.add(encode_pair(x, f.eval(lambda, x)), w);
  }
  return acc.finish();
}

Rational owf_advantage(const FunctionFamily& f, const Channel& adversary, int lambda) {
  std::size_t n = f.in_len(lambda);
  check_seed_space(n, limits().max_seed_space);
  std::map<BitString, BitString> image;
  auto f_of = [&](const BitString& x) -> const BitString& {
    auto it = image.find(x);
    if (it == image.end()) it = image.emplace(x, f.eval(lambda, x)).first;
    return it->second;
  };
  std::map<BitString, Rational> win_given_y;
  Rational total = 0;
  Rational w = pow2(-static_cast<int>(n));
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString y = f_of(BitString::from_uint(v, n));
    auto it = win_given_y.find(y);
    if (it == win_given_y.end()) {
      Rational win = 0;
      for (const auto& [x2, p] : adversary(lambda, y).masses())
        if (x2.size() == n && f_of(x2) == y) win += p;
      it = win_given_y.emplace(y, win).first;
    }
    total += w * it->second;
  }
  return total;
}

Rational distowf_distance(const FunctionFamily& f, const Channel& adversary, int lambda) {
  ExactDistribution ideal = input_image_pairs(f, lambda);
  MassAccumulator acc;
  std::map<BitString, ExactDistribution> cache;
  for (const auto& [pair, w] : ideal.masses()) {
    BitString y = decode_pair(pair).second;
    auto it = cache.find(y);
    if (it == cache.end()) it = cache.emplace(y, adversary(lambda, y)).first;
    for (const auto& [x2, p] : it->second.masses()) acc.add(encode_pair(x2, y), w * p);
  }
  return statistical_distance(ideal, acc.finish());
}

Channel canonical_inverter(const FunctionFamily& f) {
  auto cache = std::make_shared<std::map<int, std::map<BitString, std::vector<BitString>>>>();
  return [f, cache](int lambda, const BitString& y) {
    auto it = cache->find(lambda);
    if (it == cache->end()) {
      std::size_t n = f.in_len(lambda);
      check_seed_space(n, limits().max_seed_space);
      std::map<BitString, std::vector<BitString>> pre;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitString x = BitString::from_uint(v, n);
        pre[f.eval(lambda, x)].push_back(x);
      }
      it = cache->emplace(lambda, std::move(pre)).first;
    }
    auto p = it->second.find(y);
    if (p == it->second.end()) throw EmptyPreimage(f.id + ": " + y.str() + " has no preimage");
    return ExactDistribution::uniform(p->second);
  };
}

PuzzleGame puzzle_game(const OneWayPuzzle& puzzle, const Channel& adversary, int lambda) {
  PuzzleGame g{0, 0};
  std::map<BitString, Rational> win_given_puzz;
  for (const auto& [pair, w] : puzzle.samp(lambda).masses()) {
    auto [puzz, ans] = decode_pair(pair);
    if (puzzle.ver(lambda, puzz, ans)) g.correctness += w;
    auto it = win_given_puzz.find(puzz);
    if (it == win_given_puzz.end()) {
      Rational win = 0;
      for (const auto& [a2, p] : adversary(lambda, puzz).masses())
        if (puzzle.ver(lambda, puzz, a2)) win += p;
      it = win_given_puzz.emplace(puzz, win).first;
    }
    g.success += w * it->second;
  }
  return g;
}

namespace {

// Splits 1^n 0 y.
bool parse_unary_header(const BitString& puzz, std::size_t& n, BitString& y) {
  n = 0;
  while (n < puzz.size() && puzz[n] == 1) ++n;
  if (n == puzz.size()) return false;
  y = puzz.slice(n + 1, puzz.size() - n - 1);
  return true;
}

}  // namespace

OneWayPuzzle owf_to_owpuzz(const FunctionFamily& f) {
  OneWayPuzzle p;
  p.id = "owpuzz(" + f.id + ")";
  p.samp = [f](int lambda) {
    std::size_t n = f.in_len(lambda);
    check_seed_space(n, limits().max_seed_space);
    MassAccumulator acc;
    Rational w = pow2(-static_cast<int>(n));
    BitString head = BitString::ones(n) + BitString::zeros(1);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      BitString x = BitString::from_uint(v, n);
      acc.add(encode_pair(head + f.eval(lambda, x), x), w);
    }
    return acc.finish();
  };
  p.ver = [f](int lambda, const BitString& puzz, const BitString& ans) {
    std::size_t n = 0;
    BitString y;
    if (!parse_unary_header(puzz, n, y) || n != f.in_len(lambda) || ans.size() != n) return false;
    return f.eval(lambda, ans) == y;
  };
  return p;
}

Channel owf_adversary_from_puzzle_adversary(const Channel& puzzle_adversary, const FunctionFamily& f) {
  return [puzzle_adversary, f](int lambda, const BitString& y) {
    return puzzle_adversary(lambda, BitString::ones(f.in_len(lambda)) + BitString::zeros(1) + y);
  };
}

std::vector<Candidate> machine_candidates(const UniversalMachine& u) {
  std::vector<Candidate> out;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    RegisteredMachine m = u.machine(i);
    out.push_back({m.description, [m](const BitString& input, std::uint64_t steps) -> std::optional<BitString> {
                     Tape t(input, steps);
                     if (m.run(t)) return t.output();
                     return std::nullopt;
                   }});
  }
  return out;
}

Candidate family_candidate(const FunctionFamily& f) {
  return {f.id, [f](const BitString& input, std::uint64_t steps) -> std::optional<BitString> {
            for (int lambda = 1; lambda <= 4 * static_cast<int>(input.size()) + 8; ++lambda) {
              if (f.in_len(lambda) != input.size()) continue;
              if (f.step_cost(lambda) > steps) return std::nullopt;
              return f.eval(lambda, input);
            }
            return std::nullopt;
          }};
}

BitString encode_block_value(const std::optional<BitString>& v) {
  if (!v) return BitString::zeros(1);
  return BitString::ones(1) + encode_prefixed(*v);
}

namespace {

std::size_t isqrt(std::size_t l) {
  std::size_t n = 0;
  while ((n + 1) * (n + 1) <= l) ++n;
  return n;
}

}  // namespace

FunctionFamily universal_owf(std::vector<Candidate> candidates) {
  auto cands = std::make_shared<std::vector<Candidate>>(std::move(candidates));
  FunctionFamily g;
  g.id = "universal";
  g.in_len = [](int lambda) { return static_cast<std::size_t>(lambda); };
  g.eval = [cands](int, const BitString& y) {
    std::size_t n = isqrt(y.size());
    std::uint64_t steps = static_cast<std::uint64_t>(n) * n * n;
    BitString out;
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<BitString> v;
      if (i < cands->size()) v = (*cands)[i].run(y.slice(i * n, n), steps);
      out.append(encode_block_value(v));
    }
    return out;
  };
  g.step_cost = [](int lambda) {
    std::uint64_t n = isqrt(static_cast<std::size_t>(lambda));
    return n * n * n * n + static_cast<std::uint64_t>(lambda);
  };
  return g;
}

Channel universal_reduction(std::vector<Candidate> candidates, std::size_t j, Channel g_adversary,
                            std::function<std::size_t(int)> in_len) {
  auto cands = std::make_shared<std::vector<Candidate>>(std::move(candidates));
  return [cands, j, g_adversary, in_len](int lambda, const BitString& y) {
    std::size_t n = in_len(lambda);
    std::size_t jj = n >= j ? j : 1;
    std::uint64_t steps = static_cast<std::uint64_t>(n) * n * n;
    std::size_t free_bits = n * (n - 1);
    check_seed_space(free_bits, limits().max_seed_space);
    Rational w = pow2(-static_cast<int>(free_bits));
    MassAccumulator acc;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << free_bits); ++v) {
      BitString others = BitString::from_uint(v, free_bits);
      BitString image;
      std::size_t k = 0;
      for (std::size_t i = 1; i <= n; ++i) {
        if (i == jj) {
          image.append(encode_block_value(y));
          continue;
        }
        std::optional<BitString> val;
        if (i <= cands->size()) val = (*cands)[i - 1].run(others.slice(k * n, n), steps);
        image.append(encode_block_value(val));
        ++k;
      }
      for (const auto& [wout, p] : g_adversary(static_cast<int>(n * n), image).masses()) {
        if (wout.size() < n * n) continue;
        acc.add(wout.slice((jj - 1) * n, n), w * p);
      }
    }
    Rational lost = 1 - acc.total();
    if (lost > 0) acc.add(BitString::zeros(n + 1), lost);  // malformed answers map to a non-input
    return acc.finish();
  };
}

std::size_t pad_split(std::size_t r, unsigned c) {
  auto pw = [c](std::size_t i) {
    std::size_t v = 1;
    for (unsigned k = 0; k < c; ++k) v *= i;
    return v;
  };
  std::size_t i = 0;
  while (pw(i + 1) <= r) ++i;
  return i;
}

FunctionFamily pad_to_quadratic(const FunctionFamily& f, unsigned c) {
  FunctionFamily g;
  g.id = "pad(" + f.id + "," + std::to_string(c) + ")";
  g.in_len = [](int lambda) { return static_cast<std::size_t>(lambda); };
  g.eval = [f, c](int, const BitString& z) {
    std::size_t i = pad_split(z.size(), c);
    if (i == 0) return z;
    if (f.in_len(static_cast<int>(i)) != i) throw std::invalid_argument("pad_to_quadratic needs n(lambda) = lambda");
    return f.eval(static_cast<int>(i), z.prefix(i)) + z.slice(i, z.size() - i);
  };
  g.step_cost = [f, c](int lambda) {
    std::size_t i = pad_split(static_cast<std::size_t>(lambda), c);
    return (i ? f.step_cost(static_cast<int>(i)) : 0) + static_cast<std::uint64_t>(lambda);
  };
  return g;
}

Channel pad_reduction(const Channel& padded_adversary, unsigned c) {
  return [padded_adversary, c](int lambda, const BitString& y) {
    std::size_t i = static_cast<std::size_t>(lambda);
    std::size_t r = 1;
    for (unsigned k = 0; k < c; ++k) r *= i;
    std::size_t tail = r - i;
    check_seed_space(tail, limits().max_seed_space);
    Rational w = pow2(-static_cast<int>(tail));
    MassAccumulator acc;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << tail); ++v)
      for (const auto& [z, p] : padded_adversary(static_cast<int>(r), y + BitString::from_uint(v, tail)).masses())
        acc.add(z.size() >= i ? z.prefix(i) : z, w * p);
    return acc.finish();
  };
}

int lift_lambda(const std::function<std::size_t(int)>& schedule, std::size_t l) {
  if (schedule(1) > l) throw NoFeasibleLambda("n(1) = " + std::to_string(schedule(1)) + " > " + std::to_string(l));
  int lambda = 1;
  while (lambda < 4096 && schedule(lambda + 1) <= l) ++lambda;
  return lambda;
}

FunctionFamily lift_from_cofinite(const FunctionFamily& f, std::function<std::size_t(int)> schedule) {
  FunctionFamily g;
  g.id = "lift(" + f.id + ")";
  g.in_len = [](int lambda) { return static_cast<std::size_t>(lambda); };
  g.eval = [f, schedule](int, const BitString& x) {
    int lambda = lift_lambda(schedule, x.size());
    return f.eval(lambda, x.prefix(schedule(lambda)));
  };
  g.step_cost = [f, schedule](int l) {
    return f.step_cost(lift_lambda(schedule, static_cast<std::size_t>(l))) + static_cast<std::uint64_t>(l);
  };
  return g;
}

Channel lift_reduction(const Channel& g_adversary, std::function<std::size_t(int)> schedule, std::size_t l) {
  return [g_adversary, schedule, l](int lambda, const BitString& y) {
    std::size_t n = schedule(lambda);
    return g_adversary(static_cast<int>(l), y).map([n](const BitString& x) {
      return x.size() >= n ? x.prefix(n) : x;
    });
  };
}

}  // namespace pqlab
