#include "pqlab/report.hpp"

#include <stdexcept>

namespace pqlab {

namespace {

bool compare_exact(const Rational& l, const std::string& rel, const Rational& r) {
  if (rel == "<=") return l <= r;
  if (rel == "<") return l < r;
  if (rel == "==") return l == r;
  if (rel == ">=") return l >= r;
  throw std::invalid_argument("unknown relation " + rel);
}

bool compare_interval(const Interval& l, const std::string& rel, const Interval& r) {
  if (rel == "<=~") return certainly_le(l, r);
  if (rel == "<~") return certainly_lt(l, r);
  throw std::invalid_argument("unknown relation " + rel);
}

}  // namespace

bool recompute_pass(const Check& c) {
  if (c.relation == "holds") return c.left == "true";
  if (c.relation.back() == '~') {
    auto l = parse_interval(c.left), r = parse_interval(c.right);
    return l && r && compare_interval(*l, c.relation, *r);
  }
  Rational l(c.left), r(c.right);
  return compare_exact(l, c.relation, r);
}

bool GameReport::check(const std::string& description, const Rational& left, const std::string& relation,
                       const Rational& right) {
  bool pass = compare_exact(left, relation, right);
  checks.push_back({description, to_string(left), relation, to_string(right), pass});
  return pass;
}

bool GameReport::check(const std::string& description, const Interval& left, const std::string& relation,
                       const Interval& right) {
  Check c{description, format_interval(left), relation, format_interval(right), false};
  // Decide on the serialized values so that recomputation can never disagree.
  c.pass = recompute_pass(c);
  checks.push_back(c);
  return c.pass;
}

bool GameReport::check(const std::string& description, bool holds) {
  checks.push_back({description, holds ? "true" : "false", "holds", "true", holds});
  return holds;
}

bool GameReport::all_pass() const {
  if (error) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

}  // namespace pqlab
