#include "pqlab/core.hpp"

#include <algorithm>
#include <bit>
#include <memory>

namespace pqlab {

Limits& limits() {
  static Limits l;
  return l;
}

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  for (char c : bits_)
    if (c != '0' && c != '1') throw std::invalid_argument("BitString: expected only 0/1, got '" + bits_ + "'");
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t i = 0; i < width && i < 64; ++i)
    if (value >> i & 1) s[width - 1 - i] = '1';
  return BitString(std::move(s), 0);
}

BitString BitString::from_hex(const std::string& hex) {
  std::string s;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("BitString::from_hex: bad digit");
    for (int k = 3; k >= 0; --k) s.push_back(v >> k & 1 ? '1' : '0');
  }
  return BitString(std::move(s), 0);
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > bits_.size()) throw std::out_of_range("BitString::slice");
  return BitString(bits_.substr(pos, len), 0);
}

bool BitString::is_prefix_of(const BitString& o) const {
  return bits_.size() <= o.bits_.size() && o.bits_.compare(0, bits_.size(), bits_) == 0;
}

std::uint64_t BitString::to_uint() const {
  if (bits_.size() > 64) throw std::overflow_error("BitString::to_uint: longer than 64 bits");
  std::uint64_t v = 0;
  for (char c : bits_) v = v << 1 | (c == '1');
  return v;
}

std::size_t bit_length(std::uint64_t v) { return static_cast<std::size_t>(std::bit_width(v)); }

unsigned ceil_log2(std::uint64_t v) { return v <= 1 ? 0 : static_cast<unsigned>(std::bit_width(v - 1)); }

BitString encode_prefixed(const BitString& m) {
  std::size_t b = bit_length(m.size());
  return BitString::ones(b) + BitString::zeros(1) + BitString::from_uint(m.size(), b) + m;
}

std::optional<BitString> decode_prefixed(const BitString& s, std::size_t& pos) {
  std::size_t b = 0;
  while (pos < s.size() && s[pos] == 1) ++b, ++pos;
  if (pos >= s.size() || b > 63) return std::nullopt;
  ++pos;
  if (pos + b > s.size()) return std::nullopt;
  std::uint64_t len = s.slice(pos, b).to_uint();
  pos += b;
  if (pos + len > s.size()) return std::nullopt;
  BitString m = s.slice(pos, len);
  pos += len;
  return m;
}

BitString encode_list(const std::vector<BitString>& items) {
  BitString out;
  for (const auto& m : items) out.append(encode_prefixed(m));
  return out;
}

std::optional<std::vector<BitString>> decode_list(const BitString& s) {
  std::vector<BitString> items;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto m = decode_prefixed(s, pos);
    if (!m) return std::nullopt;
    items.push_back(std::move(*m));
  }
  return items;
}

BitString encode_pair(const BitString& a, const BitString& b) { return encode_list({a, b}); }

std::pair<BitString, BitString> decode_pair(const BitString& s) {
  auto items = decode_list(s);
  if (!items || items->size() != 2) throw MalformedTuple("not an encoded pair: " + s.str());
  return {(*items)[0], (*items)[1]};
}

ExactDistribution::ExactDistribution() { mass_.emplace(BitString(), Rational(1)); }

ExactDistribution ExactDistribution::point(const BitString& x) {
  ExactDistribution d;
  d.mass_.clear();
  d.mass_.emplace(x, Rational(1));
  return d;
}

ExactDistribution ExactDistribution::uniform(const std::vector<BitString>& xs) {
  if (xs.empty()) throw InvalidDistribution("uniform over an empty set");
  MassAccumulator acc;
  Rational w(1, xs.size());
  w.canonicalize();
  for (const auto& x : xs) acc.add(x, w);
  return acc.finish();
}

ExactDistribution ExactDistribution::uniform_bits(std::size_t n) {
  check_seed_space(n, limits().max_seed_space);
  ExactDistribution d;
  d.mass_.clear();
  Rational w = pow2(-static_cast<int>(n));
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) d.mass_.emplace(BitString::from_uint(s, n), w);
  return d;
}

ExactDistribution ExactDistribution::from_masses(Map masses) {
  Rational total = 0;
  for (auto it = masses.begin(); it != masses.end();) {
    if (it->second < 0) throw InvalidDistribution("negative mass at " + it->first.str());
    total += it->second;
    if (it->second == 0) it = masses.erase(it);
    else ++it;
  }
  if (total != 1) throw InvalidDistribution("masses sum to " + to_string(total) + ", not 1");
  ExactDistribution d;
  d.mass_ = std::move(masses);
  return d;
}

Rational ExactDistribution::mass(const BitString& x) const {
  auto it = mass_.find(x);
  return it == mass_.end() ? Rational(0) : it->second;
}

std::vector<BitString> ExactDistribution::support() const {
  std::vector<BitString> out;
  out.reserve(mass_.size());
  for (const auto& [x, w] : mass_) out.push_back(x);
  return out;
}

ExactDistribution ExactDistribution::map(const std::function<BitString(const BitString&)>& f) const {
  MassAccumulator acc;
  for (const auto& [x, w] : mass_) acc.add(f(x), w);
  return acc.finish();
}

Rational ExactDistribution::prob(const std::function<bool(const BitString&)>& pred) const {
  Rational r = 0;
  for (const auto& [x, w] : mass_)
    if (pred(x)) r += w;
  return r;
}

ExactDistribution ExactDistribution::condition(const std::function<bool(const BitString&)>& pred) const {
  Rational z = prob(pred);
  if (z == 0) throw InvalidDistribution("conditioning on a null event");
  Map m;
  for (const auto& [x, w] : mass_)
    if (pred(x)) m.emplace(x, w / z);
  return from_masses(std::move(m));
}

ExactDistribution ExactDistribution::product(const ExactDistribution& o) const {
  MassAccumulator acc;
  for (const auto& [x, w] : mass_)
    for (const auto& [y, v] : o.mass_) acc.add(x + y, w * v);
  return acc.finish();
}

ExactDistribution ExactDistribution::power(std::size_t n) const {
  ExactDistribution d = point(BitString());
  for (std::size_t i = 0; i < n; ++i) d = d.product(*this);
  return d;
}

ExactDistribution ExactDistribution::mix(const ExactDistribution& o, const Rational& w) const {
  MassAccumulator acc;
  for (const auto& [x, v] : mass_) acc.add(x, v * (1 - w));
  for (const auto& [x, v] : o.mass_) acc.add(x, v * w);
  return acc.finish();
}

void MassAccumulator::add(const BitString& x, const Rational& w) {
  if (w == 0) return;
  auto [it, fresh] = mass_.try_emplace(x, w);
  if (!fresh) it->second += w;
}

Rational MassAccumulator::total() const {
  Rational t = 0;
  for (const auto& [x, w] : mass_) t += w;
  return t;
}

void check_seed_space(std::size_t seed_bits, std::uint64_t cap) {
  if (seed_bits >= 63 || (std::uint64_t{1} << seed_bits) > cap)
    throw BudgetExceeded("seed space 2^" + std::to_string(seed_bits) + " exceeds cap " + std::to_string(cap));
}

ExactDistribution exact_pmf(const SeededSampler& s, int lambda) {
  return exact_pmf(s, lambda, limits().max_seed_space);
}

ExactDistribution exact_pmf(const SeededSampler& s, int lambda, std::uint64_t cap) {
  std::size_t n = s.seed_len(lambda);
  check_seed_space(n, cap);
  std::size_t m = s.out_len(lambda);
  std::map<BitString, std::uint64_t> counts;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r) {
    BitString y = s.eval(lambda, BitString::from_uint(r, n));
    if (y.size() != m)
      throw MalformedTuple("sampler " + s.id + " emitted " + std::to_string(y.size()) + " bits, declared " +
                           std::to_string(m));
    ++counts[y];
  }
  ExactDistribution::Map masses;
  Rational denom = pow2(static_cast<int>(n));
  for (const auto& [y, c] : counts) masses.emplace(y, Rational(mpz_class(static_cast<unsigned long>(c))) / denom);
  return ExactDistribution::from_masses(std::move(masses));
}

Sampler as_sampler(const SeededSampler& s) {
  return {s.id, [s](int lambda) { return exact_pmf(s, lambda); }};
}

SeededSampler sampler_from_dyadic(std::string id, std::function<ExactDistribution(int)> raw_law) {
  auto cache = std::make_shared<std::map<int, ExactDistribution>>();
  auto law = [raw_law, cache](int lambda) -> const ExactDistribution& {
    auto it = cache->find(lambda);
    if (it == cache->end()) it = cache->emplace(lambda, raw_law(lambda)).first;
    return it->second;
  };
  auto bits_of = [law](int lambda) {
    std::size_t n = 0;
    for (const auto& [x, w] : law(lambda).masses()) {
      const mpz_class& den = w.get_den();
      std::size_t b = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
      if (den != mpz_class(1) << b) throw InvalidDistribution("law is not dyadic");
      n = std::max(n, b);
    }
    return n;
  };
  auto out_len = [law](int lambda) { return law(lambda).masses().begin()->first.size(); };
  auto eval = [law, bits_of](int lambda, const BitString& seed) {
    std::size_t n = bits_of(lambda);
    mpz_class r = static_cast<unsigned long>(seed.to_uint());
    mpz_class acc = 0;
    for (const auto& [x, w] : law(lambda).masses()) {
      acc += Rational(w * Rational(mpz_class(1) << n)).get_num();
      if (r < acc) return x;
    }
    throw InvalidDistribution("dyadic sampler ran past the end");
  };
  return {std::move(id), bits_of, out_len, eval};
}

Channel as_channel(const ConditionalSampler& s) {
  return [s](int lambda, const BitString& input) {
    std::size_t n = s.seed_len(lambda);
    check_seed_space(n, limits().max_seed_space);
    MassAccumulator acc;
    Rational w = pow2(-static_cast<int>(n));
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << n); ++r)
      acc.add(s.eval(lambda, input, BitString::from_uint(r, n)), w);
    return acc.finish();
  };
}

ExactDistribution push_through(const Channel& ch, int lambda, const ExactDistribution& in) {
  MassAccumulator acc;
  for (const auto& [x, w] : in.masses())
    for (const auto& [y, v] : ch(lambda, x).masses()) acc.add(y, w * v);
  return acc.finish();
}

Rational statistical_distance(const ExactDistribution& p, const ExactDistribution& q) {
  Rational sum = 0;
  const auto& a = p.masses();
  const auto& b = q.masses();
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      sum += i->second;
      ++i;
    } else if (i == a.end() || j->first < i->first) {
      sum += j->second;
      ++j;
    } else {
      sum += abs(i->second - j->second);
      ++i, ++j;
    }
  }
  return sum / 2;
}

Divergence kl_divergence(const ExactDistribution& p, const ExactDistribution& q) {
  Divergence d;
  d.bits = Interval::point(0);
  for (const auto& [x, w] : p.masses()) {
    Rational v = q.mass(x);
    if (v == 0) {
      d.infinite = true;
      return d;
    }
    d.bits += Interval::of(w) * log2_of(w / v);
  }
  return d;
}

ExactDistribution marginal(const ExactDistribution& p, std::size_t n, std::size_t i) {
  if (n == 0 || i < 1 || i > n) throw MalformedTuple("coordinate out of range");
  MassAccumulator acc;
  for (const auto& [x, w] : p.masses()) {
    if (x.size() % n != 0) throw MalformedTuple(x.str() + " does not split into " + std::to_string(n) + " blocks");
    std::size_t b = x.size() / n;
    acc.add(x.slice((i - 1) * b, b), w);
  }
  return acc.finish();
}

ExactDistribution average_marginal(const ExactDistribution& p, std::size_t n) {
  MassAccumulator acc;
  Rational inv(1, n);
  inv.canonicalize();
  for (std::size_t i = 1; i <= n; ++i)
    for (const auto& [y, w] : marginal(p, n, i).masses()) acc.add(y, w * inv);
  return acc.finish();
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational pow2(int e) {
  mpz_class one = 1;
  if (e >= 0) return Rational(one << e);
  return Rational(one, one << -e);
}

bool pow2_times_at_least_one(long e, const Rational& r) {
  // 2^e * n / d >= 1  <=>  n * 2^e >= d
  mpz_class n = r.get_num(), d = r.get_den();
  if (e >= 0) n <<= static_cast<mp_bitcnt_t>(e);
  else d <<= static_cast<mp_bitcnt_t>(-e);
  return n >= d;
}

}  // namespace pqlab
