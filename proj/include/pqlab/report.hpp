// Result record shared by every audit. Exact values are stored as rationals,
// irrational ones as intervals; each check keeps both sides so that its pass
// flag can be recomputed from the serialized record alone.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pqlab/core.hpp"

namespace pqlab {

// "<=", "<", "==", ">=" over exact "num/den" operands; "<=~" and "<~" over
// intervals (certainly_le / certainly_lt).
struct Check {
  std::string description;
  std::string left;
  std::string relation;
  std::string right;
  bool pass = false;
};

bool recompute_pass(const Check& c);

struct GameReport {
  std::string lemma_tag;
  std::map<std::string, std::string> inputs;
  std::map<std::string, Rational> quantities;
  std::map<std::string, Interval> intervals;
  std::vector<Check> checks;
  std::optional<std::string> error;

  bool check(const std::string& description, const Rational& left, const std::string& relation,
             const Rational& right);
  bool check(const std::string& description, const Interval& left, const std::string& relation,
             const Interval& right);
  bool check(const std::string& description, bool holds);
  bool all_pass() const;
};

}  // namespace pqlab
