// Outward-rounded long double intervals for the irrational legs (logs, roots).
#pragma once

#include <optional>
#include <string>

#include <gmpxx.h>

namespace pqlab {

// One-sided comparisons accept a slack of 2^-40.
inline constexpr long double kIntervalSlack = 1.0L / 1099511627776.0L;

struct Interval {
  long double lo = 0;
  long double hi = 0;

  static Interval point(long double v) { return {v, v}; }
  static Interval of(const mpq_class& q);
  static Interval ln2();

  bool contains(long double v) const { return lo <= v && v <= hi; }
  long double mid() const { return (lo + hi) / 2; }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  Interval& operator+=(const Interval& b) { return *this = *this + b; }
};

Interval sqrt(const Interval& a);
Interval max(const Interval& a, const Interval& b);
// log2 of a positive rational.
Interval log2_of(const mpq_class& q);

// a <= b up to the slack, decided on the pessimistic endpoints.
inline bool certainly_le(const Interval& a, const Interval& b) { return a.hi <= b.lo + kIntervalSlack; }

// 21 significant digits, enough for long double to round-trip.
std::string format_interval(const Interval& a);
std::optional<Interval> parse_interval(const std::string& s);
inline bool certainly_lt(const Interval& a, const Interval& b) { return a.hi < b.lo; }

}  // namespace pqlab
