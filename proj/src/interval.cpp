#include "pqlab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace pqlab {

namespace {

constexpr long double kInf = __builtin_huge_vall();

Interval widen(long double lo, long double hi, int ulps = 2) {
  for (int i = 0; i < ulps; ++i) {
    lo = std::nextafter(lo, -kInf);
    hi = std::nextafter(hi, kInf);
  }
  return {lo, hi};
}

// log2 of a positive integer, accurate to ~2^-50 absolute.
long double log2_mpz(const mpz_class& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(static_cast<long double>(mant)) + static_cast<long double>(exp);
}

}  // namespace

Interval Interval::of(const mpq_class& q) {
  if (q == 0) return point(0);
  // mpq_get_d truncates to 53 bits; widen by a relative 2^-50.
  long double d = mpq_get_d(q.get_mpq_t());
  long double e = std::fabs(d) * 0x1p-50L;
  return widen(d - e, d + e);
}

Interval Interval::ln2() {
  long double v = 0.693147180559945309417232121458176568L;
  return widen(v, v, 4);
}

Interval operator+(const Interval& a, const Interval& b) { return widen(a.lo + b.lo, a.hi + b.hi); }

Interval operator-(const Interval& a, const Interval& b) { return widen(a.lo - b.hi, a.hi - b.lo); }

Interval operator*(const Interval& a, const Interval& b) {
  long double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return widen(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw std::domain_error("interval division by a range containing 0");
  long double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  return widen(*std::min_element(c, c + 4), *std::max_element(c, c + 4));
}

Interval sqrt(const Interval& a) {
  long double lo = a.lo <= 0 ? 0 : std::sqrt(a.lo);
  long double hi = a.hi <= 0 ? 0 : std::sqrt(a.hi);
  Interval r = widen(lo, hi);
  if (r.lo < 0) r.lo = 0;
  return r;
}

Interval max(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }

Interval log2_of(const mpq_class& q) {
  if (q <= 0) throw std::domain_error("log2 of a non-positive rational");
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_popcount(num.get_mpz_t()) == 1 && mpz_popcount(den.get_mpz_t()) == 1) {
    long double e = static_cast<long double>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                    static_cast<long double>(mpz_sizeinbase(den.get_mpz_t(), 2));
    return Interval::point(e);
  }
  long double v = log2_mpz(q.get_num()) - log2_mpz(q.get_den());
  long double e = 0x1p-45L * (1 + std::fabs(v));
  return {v - e, v + e};
}

std::string format_interval(const Interval& a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "[%.20Le, %.20Le]", a.lo, a.hi);
  return buf;
}

std::optional<Interval> parse_interval(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') return std::nullopt;
  auto comma = s.find(',');
  if (comma == std::string::npos) return std::nullopt;
  Interval r;
  char* end = nullptr;
  std::string lo = s.substr(1, comma - 1), hi = s.substr(comma + 1, s.size() - comma - 2);
  r.lo = std::strtold(lo.c_str(), &end);
  if (end == lo.c_str()) return std::nullopt;
  r.hi = std::strtold(hi.c_str(), &end);
  if (end == hi.c_str()) return std::nullopt;
  return r;
}

}  // namespace pqlab
