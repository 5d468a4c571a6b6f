#include "pqlab/advantage.hpp"

#include <algorithm>
#include <memory>

namespace pqlab {

std::size_t AdvantageProtocol::repetitions(int lambda) const {
  if (n_override) return *n_override;
  std::uint64_t q4 = q > 255 ? UINT64_MAX : q * q * q * q;
  return static_cast<std::size_t>(std::max<std::uint64_t>(q4, static_cast<std::uint64_t>(lambda)));
}

bool AdvantageProtocol::length_precondition(int lambda) const {
  return base.out_len(lambda) * repetitions(lambda) >= static_cast<std::size_t>(lambda);
}

AdvantageProtocol make_advantage_protocol(const SeededSampler& a, std::uint64_t q, unsigned k,
                                          std::optional<std::size_t> n) {
  AdvantageProtocol p;
  p.base = a;
  p.q = q;
  p.k = k;
  p.n_override = n;
  p.budget = limits().max_steps;
  return p;
}

RegisteredMachine sampler_coding_machine(const Sampler& s, int lambda, std::size_t seed_bits, std::size_t out_bits) {
  return coding_machine(s.pmf(lambda), lambda, sampler_compute_cost(seed_bits, out_bits),
                        "shannon-fano decoder for " + s.id + " at lambda " + std::to_string(lambda));
}

namespace {

Sampler tuple_sampler(const AdvantageProtocol& proto) {
  std::size_t n_fixed = proto.n_override.value_or(0);
  AdvantageProtocol p = proto;
  return {proto.base.id + "^N", [p, n_fixed](int lambda) {
            std::size_t n = n_fixed ? n_fixed : p.repetitions(lambda);
            return exact_pmf(p.base, lambda).power(n);
          }};
}

std::string registry_signature(const UniversalMachine& u) {
  std::string s;
  for (std::size_t i = 1; i <= u.size(); ++i) s += u.machine(i).description + "|";
  return s;
}

std::map<std::string, KtResult>& kt_cache() {
  static std::map<std::string, KtResult> cache;
  return cache;
}

// Smallest t with 2^t * p >= 1.
std::size_t ceil_log_inverse(const Rational& p) {
  std::size_t t = 0;
  while (!pow2_times_at_least_one(static_cast<long>(t), p)) ++t;
  return t;
}

}  // namespace

UniversalMachine advantage_machine(const AdvantageProtocol& proto, int lambda,
                                   const std::vector<RegisteredMachine>& extra) {
  std::size_t n = proto.repetitions(lambda);
  Sampler s = tuple_sampler(proto);
  s.id = proto.base.id + "^" + std::to_string(n);
  UniversalMachine u({literal_machine(), run_length_machine(),
                      sampler_coding_machine(s, lambda, n * proto.base.seed_len(lambda),
                                             n * proto.base.out_len(lambda))});
  for (const auto& m : extra) u.add(m);
  return u;
}

TupleVerdict verify_tuple(const AdvantageProtocol& proto, const UniversalMachine& u, int lambda,
                          const BitString& tuple, std::size_t min_len) {
  std::size_t n = proto.repetitions(lambda), m = proto.base.out_len(lambda);
  TupleVerdict v;
  if (tuple.size() != n * m) return v;
  ExactDistribution a = exact_pmf(proto.base, lambda);
  v.mass = 1;
  for (std::size_t i = 0; i < n; ++i) v.mass *= a.mass(tuple.slice(i * m, m));
  if (v.mass == 0) {
    v.verdict = Verdict::ZeroMassWitness;
    return v;
  }
  v.max_len = std::max({default_max_len(tuple), ceil_log_inverse(v.mass), min_len});
  std::string key = registry_signature(u) + std::to_string(lambda) + ":" + tuple.str() + ":" +
                    std::to_string(v.max_len) + ":" + std::to_string(proto.budget);
  auto it = kt_cache().find(key);
  if (it == kt_cache().end()) it = kt_cache().emplace(key, kt_complexity(u, tuple, proto.budget, v.max_len)).first;
  v.kt = it->second.value;
  // Without a hit K^t > max_len >= log2(1/p_Y), so the threshold is met.
  bool accept = !v.kt || pow2_times_at_least_one(static_cast<long>(*v.kt + proto.k), v.mass);
  v.verdict = accept ? Verdict::Accept : Verdict::Reject;
  return v;
}

IVPoQ build_advantage_protocol(const AdvantageProtocol& proto) {
  IVPoQ s;
  s.id = "advantage(" + proto.base.id + ",q=" + std::to_string(proto.q) + ",k=" + std::to_string(proto.k) + ")";
  SeededSampler a = proto.base;
  AdvantageProtocol p = proto;
  s.prover.id = "honest(" + a.id + ")";
  s.prover.seed_dist = [p](int lambda) {
    return ExactDistribution::uniform_bits(p.repetitions(lambda) * p.base.seed_len(lambda));
  };
  s.prover.rounds = [](int) { return std::size_t{1}; };
  s.prover.width = [p](int lambda, std::size_t) { return p.repetitions(lambda) * p.base.out_len(lambda); };
  s.prover.next_message = [p](int lambda, const BitString& seed, const std::vector<BitString>&) {
    std::size_t n = p.repetitions(lambda), sl = p.base.seed_len(lambda);
    BitString y;
    for (std::size_t i = 0; i < n; ++i) y.append(p.base.eval(lambda, seed.slice(i * sl, sl)));
    return ExactDistribution::point(y);
  };
  s.verifier1 = silent_verifier();
  auto machines = std::make_shared<std::map<int, UniversalMachine>>();
  s.verifier2 = [p, machines](int lambda, const std::vector<BitString>& msgs) {
    if (msgs.size() != 2) return false;
    auto it = machines->find(lambda);
    if (it == machines->end()) it = machines->emplace(lambda, advantage_machine(p, lambda)).first;
    return verify_tuple(p, it->second, lambda, msgs[1]).verdict == Verdict::Accept;
  };
  unsigned k = proto.k;
  s.completeness = [k](int) { return Rational(1 - pow2(-static_cast<int>(k))); };
  // No soundness gap is claimed at desk scale; audits measure it instead.
  s.soundness = s.completeness;
  s.public_coin = true;
  return s;
}

IVPoQ build_advantage_protocol(const SeededSampler& a, std::uint64_t q) {
  return build_advantage_protocol(make_advantage_protocol(a, q));
}

Rational honest_acceptance(const AdvantageProtocol& proto, int lambda) {
  UniversalMachine u = advantage_machine(proto, lambda);
  ExactDistribution law = exact_pmf(proto.base, lambda).power(proto.repetitions(lambda));
  Rational acc = 0;
  for (const auto& [y, w] : law.masses())
    if (verify_tuple(proto, u, lambda, y).verdict == Verdict::Accept) acc += w;
  return acc;
}

Sampler solver_to_sampler(const SeededSampler& p_star, std::size_t n) {
  return {"coordinate(" + p_star.id + ")", [p_star, n](int lambda) {
            std::size_t out = p_star.out_len(lambda), sl = p_star.seed_len(lambda);
            if (n == 0 || out % n != 0)
              throw MalformedTuple(p_star.id + ": output width " + std::to_string(out) + " is not " +
                                   std::to_string(n) + " blocks");
            check_seed_space(sl, limits().max_seed_space);
            std::size_t m = out / n;
            Rational w = pow2(-static_cast<int>(sl)) / Rational(static_cast<unsigned long>(n));
            MassAccumulator acc;
            for (std::uint64_t v = 0; v < (std::uint64_t{1} << sl); ++v) {
              BitString y = p_star.eval(lambda, BitString::from_uint(v, sl));
              if (y.size() != out) throw MalformedTuple(p_star.id + " emitted a tuple of the wrong width");
              for (std::size_t i = 0; i < n; ++i) acc.add(y.slice(i * m, m), w);
            }
            return acc.finish();
          }};
}

namespace {

Interval kl_interval(const ExactDistribution& p, const ExactDistribution& q) {
  Divergence d = kl_divergence(p, q);
  if (d.infinite) throw std::logic_error("unexpected infinite divergence");
  return d.bits;
}

Interval log2_inverse_one_minus(const Rational& delta) {
  if (delta == 0) return Interval::point(0);
  return log2_of(1 / (1 - delta));
}

}  // namespace

GameReport soundness_bound_audit(const AdvantageProtocol& proto, const SeededSampler& p_star, int lambda) {
  GameReport r;
  r.lemma_tag = "advantage-soundness-chain";
  std::size_t n = proto.repetitions(lambda), m = proto.base.out_len(lambda);
  r.inputs = {{"sampler", proto.base.id},
              {"cheater", p_star.id},
              {"lambda", std::to_string(lambda)},
              {"N", std::to_string(n)},
              {"k", std::to_string(proto.k)},
              {"length_precondition", proto.length_precondition(lambda) ? "met" : "not met"}};
  if (p_star.out_len(lambda) != n * m)
    throw MalformedTuple(p_star.id + " does not emit " + std::to_string(n) + " blocks of " + std::to_string(m));

  ExactDistribution a = exact_pmf(proto.base, lambda);
  ExactDistribution an = a.power(n);
  ExactDistribution q = exact_pmf(p_star, lambda);

  RegisteredMachine coder = sampler_coding_machine(as_sampler(p_star), lambda, p_star.seed_len(lambda), n * m);
  UniversalMachine u = advantage_machine(proto, lambda, {coder});
  std::size_t h_q = coding_header_cost(u.size(), lambda);
  r.quantities["cheater_header_bits"] = Rational(static_cast<unsigned long>(h_q));

  std::map<BitString, TupleVerdict> verdicts;
  Rational acceptance = 0, zero_mass = 0;
  std::size_t lower_violations = 0, upper_violations = 0;
  for (const auto& [y, w] : q.masses()) {
    std::size_t upper = shannon_fano_length(w) + h_q;
    TupleVerdict v = verify_tuple(proto, u, lambda, y, upper);
    if (v.verdict == Verdict::Accept) {
      acceptance += w;
      if (v.kt && !pow2_times_at_least_one(static_cast<long>(*v.kt + proto.k), v.mass)) ++lower_violations;
      if (!v.kt || *v.kt > upper) ++upper_violations;
    }
    if (v.verdict == Verdict::ZeroMassWitness) zero_mass += w;
    verdicts.emplace(y, v);
  }
  Rational delta = 1 - acceptance;
  r.quantities["acceptance"] = acceptance;
  r.quantities["delta"] = delta;
  r.quantities["zero_mass_witness_mass"] = zero_mass;
  if (acceptance == 0) throw EmptyAcceptingSet(p_star.id + " is never accepted at lambda " + std::to_string(lambda));

  ExactDistribution c = q.condition([&](const BitString& y) { return verdicts.at(y).verdict == Verdict::Accept; });
  ExactDistribution b = average_marginal(q, n), b2 = average_marginal(c, n);

  Rational sd_q_c = statistical_distance(q, c);
  Rational sd_b_b2 = statistical_distance(b, b2);
  Rational sd_a_b = statistical_distance(a, b);
  Rational sd_a_b2 = statistical_distance(a, b2);
  r.quantities["SD(q,C')"] = sd_q_c;
  r.quantities["SD(B,B')"] = sd_b_b2;
  r.quantities["SD(A,B)"] = sd_a_b;
  r.quantities["SD(A,B')"] = sd_a_b2;

  Rational mean_sd_qc = 0, mean_sd_ac = 0;
  Interval sum_kl = Interval::point(0), mean_sqrt = Interval::point(0);
  Interval half_ln2 = Interval::ln2() / Interval::point(2);
  for (std::size_t i = 1; i <= n; ++i) {
    ExactDistribution qi = marginal(q, n, i), ci = marginal(c, n, i);
    Rational sd_qc = statistical_distance(qi, ci), sd_ac = statistical_distance(a, ci);
    mean_sd_qc += sd_qc;
    mean_sd_ac += sd_ac;
    r.check("SD(q_" + std::to_string(i) + ", C'_" + std::to_string(i) + ") <= SD(q, C')", sd_qc, "<=",
                           sd_q_c);
    Interval kl_i = kl_interval(ci, a);
    r.intervals["KL(C'_" + std::to_string(i) + " || A)"] = kl_i;
    sum_kl += kl_i;
    Interval pinsker = sqrt(half_ln2 * kl_i);
    mean_sqrt += pinsker;
    r.check("Pinsker: SD(A, C'_" + std::to_string(i) + ") <= sqrt(ln2 KL / 2)", Interval::of(sd_ac),
                          "<=~", pinsker);
  }
  Rational nn(static_cast<unsigned long>(n));
  mean_sd_qc /= nn;
  mean_sd_ac /= nn;
  Interval n_iv = Interval::point(static_cast<long double>(n));
  mean_sqrt = mean_sqrt / n_iv;

  r.check("convexity: SD(B, B') <= mean_i SD(q_i, C'_i)", sd_b_b2, "<=", mean_sd_qc);
  r.check("projection: SD(q, C') == delta", sd_q_c, "==", delta);
  r.check("triangle: SD(A, B) <= SD(A, B') + SD(B', B)", sd_a_b, "<=", sd_a_b2 + sd_b_b2);
  r.check("convexity: SD(A, B') <= mean_i SD(A, C'_i)", sd_a_b2, "<=", mean_sd_ac);
  r.check("Jensen: mean_i sqrt(ln2 KL_i / 2) <= sqrt(ln2 sum_i KL_i / (2N))", mean_sqrt, "<=~",
          sqrt(half_ln2 * sum_kl / n_iv));

  Interval kl = kl_interval(c, an);
  r.intervals["KL(C' || A^N)"] = kl;
  r.intervals["sum_i KL(C'_i || A)"] = sum_kl;
  r.check("superadditivity: sum_i KL(C'_i || A) <= KL(C' || A^N)", sum_kl, "<=~", kl);

  // M = max over accepted Y with C'_Y > p_Y of log2(q_Y / p_Y).
  std::optional<Interval> big_m;
  Rational ratio_bound = pow2(static_cast<int>(h_q + 1 + proto.k));
  std::size_t ratio_violations = 0;
  for (const auto& [y, cy] : c.masses()) {
    const TupleVerdict& v = verdicts.at(y);
    Rational qy = q.mass(y);
    if (qy > ratio_bound * v.mass) ++ratio_violations;
    if (cy <= v.mass) continue;
    Interval l = log2_of(qy / v.mass);
    big_m = big_m ? max(*big_m, l) : l;
  }
  Interval m_pos = big_m && big_m->hi > 0 ? max(*big_m, Interval::point(0)) : Interval::point(0);
  if (big_m) r.intervals["M"] = *big_m;
  Interval renorm = log2_inverse_one_minus(delta);
  r.intervals["log2(1/(1-delta))"] = renorm;
  r.check("KL(C' || A^N) <= max(0, M) + log2(1/(1-delta))", kl, "<=~", m_pos + renorm);

  r.check("sandwich lower: accepted Y has 2^(K+k) p_Y >= 1 (violations)",
          Rational(static_cast<unsigned long>(lower_violations)), "==", 0);
  r.check("sandwich upper: K(Y) <= floor(log2 1/q_Y) + 1 + header (violations)",
          Rational(static_cast<unsigned long>(upper_violations)), "==", 0);
  r.check("ratio: q_Y <= 2^(header + 1 + k) p_Y on accepted Y (violations)",
          Rational(static_cast<unsigned long>(ratio_violations)), "==", 0);
  Interval m_bound = Interval::point(static_cast<long double>(h_q + 1 + proto.k));
  r.intervals["M_bound"] = m_bound;
  r.check("M <= header + 1 + k", m_pos, "<=~", m_bound);

  Interval delta_iv = Interval::of(delta);
  Interval bound = delta_iv + sqrt(half_ln2 * (m_bound + renorm) / n_iv);
  r.intervals["assembled_bound"] = bound;
  r.check("SD(A, B') <= sqrt(ln2 KL(C' || A^N) / (2N))", Interval::of(sd_a_b2), "<=~", sqrt(half_ln2 * kl / n_iv));
  r.check("final: SD(A, B) <= delta + sqrt(ln2 (M_bound + log2(1/(1-delta))) / (2N))", Interval::of(sd_a_b), "<=~",
          bound);
  if (delta <= Rational(1, 2)) {
    Interval coarse = delta_iv + sqrt((m_bound + Interval::point(1)) / n_iv);
    r.intervals["coarse_bound"] = coarse;
    r.check("coarse: SD(A, B) <= delta + sqrt((M_bound + 1) / N) for delta <= 1/2", Interval::of(sd_a_b), "<=~",
            coarse);
  }
  return r;
}

GoodSet good_set(const ExactDistribution& q, const ExactDistribution& s, const Rational& p) {
  if (p <= 0) throw std::invalid_argument("good_set: p must be positive");
  GoodSet g;
  g.miss_mass = 0;
  std::map<BitString, bool> seen;
  for (const auto& [x, _] : q.masses()) seen[x] = true;
  for (const auto& [x, _] : s.masses()) seen[x] = true;
  for (const auto& [x, _] : seen) {
    Rational qx = q.mass(x), sx = s.mass(x);
    if (abs(qx - sx) * 3 * p <= qx)
      g.good.push_back(x);
    else
      g.miss_mass += qx;
  }
  g.bound = 6 * p * statistical_distance(q, s);
  return g;
}

GoodSet good_set(const SeededSampler& q, const SeededSampler& s, int lambda, const Rational& p) {
  return good_set(exact_pmf(q, lambda), exact_pmf(s, lambda), p);
}

}  // namespace pqlab
