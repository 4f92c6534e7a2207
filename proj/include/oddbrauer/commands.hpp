#pragma once

// Command implementations behind the oddbrauer executable. Each returns the
// structured report, the human-readable rendering and the exit code
// (0 holds / success, 1 inconclusive or violated invariant). Input errors
// and exhausted factoring budgets surface as exceptions; the executable maps
// them to exit codes 2 and 3.

#include "oddbrauer/brauer.hpp"
#include "oddbrauer/criteria.hpp"
#include "oddbrauer/fflab.hpp"
#include "oddbrauer/fielddata.hpp"
#include "oddbrauer/qp2.hpp"
#include "oddbrauer/report.hpp"
#include "oddbrauer/verify.hpp"

#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oddbrauer {

enum ExitCode : int { kExitHolds = 0, kExitInconclusive = 1, kExitInputError = 2, kExitBudget = 3 };

struct CommandOutcome {
  Report report;
  std::string text;
  int exit_code = kExitHolds;
};

/// "5,13,17" -> probes. Throws std::invalid_argument on malformed lists.
inline std::vector<ProbePrime> parse_probe_list(const std::string& csv) {
  std::vector<ProbePrime> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("probes: \"" + item + "\" is not a positive integer");
    }
    const Integer p(item);
    if (p % 4 != 1 || !is_prime(p)) throw std::invalid_argument("probes: " + item + " is not a prime = 1 mod 4");
    out.push_back(ProbePrime::from(p));
  }
  if (out.empty()) throw std::invalid_argument("probes: empty list");
  return out;
}

namespace detail {

inline std::string join(const std::vector<Integer>& xs, const char* sep = ", ") {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x.str();
  return out;
}

inline void render_bound(std::ostringstream& os, const BoundReport& g) {
  for (const auto& [ell, e] : g.candidates) {
    os << "  " << ell << ": " << to_string(e.status);
    if (e.phi_upper) {
      os << ", phi <= " << *e.phi_upper << ", witness " << join(e.witnesses) << "\n";
    } else {
      os << ", no admissible probe\n";
    }
  }
}

// ell^phi over the surviving candidates, or null when some candidate has no
// bound yet.
inline nlohmann::json exponent_json(const BoundReport& g, std::string& text) {
  Integer value = 1;
  nlohmann::json factors = nlohmann::json::object();
  for (const auto& [ell, e] : g.candidates) {
    if (e.status != CandidateStatus::Candidate) continue;
    if (!e.phi_upper) {
      text = "unbounded (" + ell.str() + " has no admissible probe)";
      return nullptr;
    }
    value *= boost::multiprecision::pow(ell, *e.phi_upper);
    if (*e.phi_upper > 0) factors[ell.str()] = *e.phi_upper;
  }
  std::string fact;
  for (const auto& [ell, e] : g.candidates) {
    if (e.status != CandidateStatus::Candidate || *e.phi_upper == 0) continue;
    fact += (fact.empty() ? "" : " * ") + ell.str() + (*e.phi_upper > 1 ? "^" + std::to_string(*e.phi_upper) : "");
  }
  text = value.str() + (fact.empty() ? "" : " = " + fact);
  return {{"value", integer_json(value)}, {"factors", factors}};
}

}  // namespace detail

/// Full odd-torsion analysis of a surface description.
inline CommandOutcome cmd_analyze(const SurfaceSpec& spec, const std::vector<ProbePrime>& probe_override = {},
                                  std::optional<std::uint64_t> search_bound_override = std::nullopt,
                                  std::uint64_t budget = kDefaultFactorBudget) {
  const auto probes = probes_for(spec, probe_override);
  const std::uint64_t bound = search_bound_override.value_or(spec.search_bound.value_or(kDefaultSearchBound));
  CommandOutcome out;
  out.report.command = "analyze";
  out.report.inputs = to_json(spec);
  std::ostringstream os;

  const CombinedResult combined = combined_odd_verdict(spec, probes, bound, budget);
  const BoundReport g = combined.g_subset_i ? combined.g_subset_i->g : g_superset(spec.N, probes, bound, budget);
  auto& res = out.report.results;

  os << "field " << spec.field.name() << ", N = " << spec.N << ", probes " << [&] {
    std::vector<Integer> ps;
    for (const auto& p : probes) ps.push_back(p.p);
    return detail::join(ps, ",");
  }() << ", search bound " << bound << "\n";

  os << "G-superset (odd primes that may divide the Brauer group order):\n";
  detail::render_bound(os, g);
  res["g_superset"] = to_json(g);

  std::string exp_text;
  res["exponent_bound"] = detail::exponent_json(g, exp_text);
  os << "odd exponent bound: " << exp_text << "\n";

  std::set<Integer> relevant;
  for (const auto& ell : g.surviving()) relevant.insert(ell);
  for (const auto& p : spec.field.is_literal() ? spec.support_primes() : spec.listed_primes()) relevant.insert(p);
  if (combined.p_group) relevant.insert(combined.p_group->p);
  res["i_membership"] = nlohmann::json::array();
  os << "I-membership:\n";
  for (const auto& p : relevant) {
    try {
      const auto m = in_I(p, spec);
      res["i_membership"].push_back(to_json(m));
      os << "  " << p << ": " << (m.member ? "in I" : "not in I");
      for (const auto& pc : m.places) os << " [e=" << pc.place.e << " f=" << pc.place.f << ": " << to_string(pc.condition) << "]";
      os << "\n";
    } catch (const MissingPlaces&) {
      res["i_membership"].push_back({{"p", integer_json(p)}, {"in_I", nullptr}, {"places", nlohmann::json::array()}});
      os << "  " << p << ": no place data\n";
    }
  }

  if (combined.p_group) {
    res["valuation_sum_witness"] = {{"p", integer_json(combined.p_group->p)},
                                    {"place", to_json(combined.p_group->place)},
                                    {"sum", combined.p_group->sum}};
  } else {
    res["valuation_sum_witness"] = nullptr;
  }
  if (combined.single) {
    res["single_class"] = {{"p", integer_json(combined.single->membership.p)},
                           {"holds", combined.single->holds},
                           {"shortcut", combined.single->shortcut},
                           {"max_e", combined.single->max_e}};
  }
  if (combined.g_subset_i) res["g_subset_i"] = to_json(combined.g_subset_i->verdict);
  if (spec.field.is_literal()) res["genus_one_fibration"] = fibration_square_criterion(*spec.coefficients, spec.field);

  res["verdict"] = to_json(combined.verdict);
  out.report.certification["verdict"] = certification_level(combined.verdict.status);
  out.report.certification["g_superset"] = "conservative";
  out.report.certification["exponent_bound"] = "conservative";
  out.report.certification["i_membership"] = "exact";

  os << "verdict: " << to_string(combined.verdict.status) << "\n";
  for (const auto& r : combined.verdict.reasons) os << "  - " << r << "\n";
  out.text = os.str();
  out.exit_code = combined.verdict.holds() ? kExitHolds : kExitInconclusive;
  return out;
}

inline CommandOutcome cmd_phi(const Integer& ell, unsigned long long m, std::uint64_t bound) {
  const PhiBound b = phi_upper(ell, m, bound);
  CommandOutcome out;
  out.report.command = "phi";
  out.report.inputs = {{"ell", integer_json(ell)}, {"m", m}, {"bound", bound}};
  out.report.results = {{"phi_upper", b.value}, {"witness", integer_json(b.witness.p)}, {"witness_pi", b.witness.pi.str()}};
  out.report.certification["phi_upper"] = "upper-bound";
  out.text = "phi(" + ell.str() + ", " + std::to_string(m) + ") <= " + std::to_string(b.value) + " (witness p = " +
             b.witness.p.str() + ", pi = " + b.witness.pi.str() + ")\n";
  return out;
}

inline CommandOutcome cmd_sbound(unsigned long long m, const std::vector<ProbePrime>& probes,
                                 std::uint64_t budget = kDefaultFactorBudget) {
  const BoundReport r = s_candidates(m, probes, budget);
  CommandOutcome out;
  out.report.command = "sbound";
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : probes) ps.push_back(integer_json(p.p));
  out.report.inputs = {{"m", m}, {"probes", ps}};
  out.report.results = to_json(r);
  out.report.certification["candidates"] = "conservative";
  std::ostringstream os;
  os << "S_" << m << " candidates:\n";
  detail::render_bound(os, r);
  os << "surviving: {" << detail::join(r.surviving()) << "}\n";
  out.text = os.str();
  return out;
}

inline CommandOutcome cmd_hilbert(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert: arguments must be nonzero");
  const int symbol = hilbert2(a, b);
  const int oracle = hilbert2_oracle(a, b);
  if (symbol != oracle) throw std::logic_error("hilbert: closed form and search disagree");
  CommandOutcome out;
  out.report.command = "hilbert";
  out.report.inputs = {{"a", to_string(a)}, {"b", to_string(b)}};
  out.report.results = {{"symbol", symbol}, {"oracle", oracle}};
  out.report.certification["symbol"] = "exact";
  out.text = "(" + to_string(a) + ", " + to_string(b) + ")_2 = " + (symbol > 0 ? "+1" : "-1") + "\n";
  return out;
}

inline CommandOutcome cmd_swan(const Integer& e, const Integer& p, const Integer& t) {
  const SwanBound s = swan_bound(e, p, t);
  CommandOutcome out;
  out.report.command = "swan";
  out.report.inputs = {{"e", integer_json(e)}, {"p", integer_json(p)}, {"t", integer_json(t)}};
  nlohmann::json adm = nlohmann::json::array();
  for (const auto& v : s.admissible()) adm.push_back(integer_json(v));
  out.report.results = {{"upper", integer_json(s.upper)}, {"multiple_of", integer_json(s.multiple_of)}, {"admissible", adm}};
  out.report.certification["upper"] = "exact";
  out.text = "Swan conductor <= " + s.upper.str() + ", divisible by " + s.multiple_of.str() + "; admissible {" +
             detail::join(s.admissible()) + "}\n";
  return out;
}

inline CommandOutcome cmd_thresholds(const Integer& q, const Integer& p, const Integer& g) {
  const bool hw = hasse_weil_threshold(q, p, g);
  const bool cone = cone_threshold(q, p);
  CommandOutcome out;
  out.report.command = "thresholds";
  out.report.inputs = {{"q", integer_json(q)}, {"p", integer_json(p)}, {"g", integer_json(g)}};
  out.report.results = {{"hasse_weil", hw}, {"cone", cone}};
  out.report.certification = {{"hasse_weil", "exact"}, {"cone", "exact"}};
  out.text = std::string("sqrt q + 1/sqrt q > 2(p(g-1)+1): ") + (hw ? "yes" : "no") +
             "\nsqrt q + 1/sqrt q > 2(2p+1): " + (cone ? "yes" : "no") + "\n";
  return out;
}

/// suite: "fflab", "kummer" or "all".
inline CommandOutcome cmd_verify_local(const std::string& suite,
                                       const CurveCoefficients& coeffs = CurveCoefficients::supersingular_A(),
                                       int precision = 12) {
  if (suite != "fflab" && suite != "kummer" && suite != "all") {
    throw std::invalid_argument("verify-local: unknown suite \"" + suite + "\"");
  }
  std::vector<SuiteResult> results;
  if (suite == "fflab" || suite == "all") results.push_back(fflab_suite(coeffs));
  if (suite == "kummer" || suite == "all") results.push_back(kummer_suite(precision));

  CommandOutcome out;
  out.report.command = "verify-local";
  out.report.inputs = {{"suite", suite},
                       {"curve", {coeffs.a[0], coeffs.a[1], coeffs.a[2], coeffs.a[3], coeffs.a[4]}},
                       {"precision", precision}};
  out.report.results["suites"] = nlohmann::json::array();
  std::ostringstream os;
  bool ok = true;
  for (const auto& s : results) {
    out.report.results["suites"].push_back(to_json(s));
    out.report.certification[s.suite] = s.ok() ? "verified" : "violated";
    ok = ok && s.ok();
    os << s.suite << ":\n";
    for (const auto& c : s.checks) os << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  }
  os << (ok ? "all checks passed\n" : "violations found\n");
  out.text = os.str();
  out.exit_code = ok ? kExitHolds : kExitInconclusive;
  return out;
}

}  // namespace oddbrauer
