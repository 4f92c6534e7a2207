#pragma once

// Sufficient conditions for the odd-torsion part of Br(X) not to obstruct
// weak approximation on a diagonal quartic X over F. Every checker is
// three-valued: a failed condition means "inconclusive", never "an
// obstruction exists".

#include "oddbrauer/arith.hpp"
#include "oddbrauer/brauer.hpp"
#include "oddbrauer/fielddata.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddbrauer {

enum class VerdictStatus { HoldsCertified, HoldsConservative, Inconclusive };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::HoldsCertified: return "holds-certified";
    case VerdictStatus::HoldsConservative: return "holds-conservative";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  std::vector<std::string> reasons;

  bool holds() const { return status != VerdictStatus::Inconclusive; }
};

/// Which local condition put a place into I. In order of preference:
/// (i) 4e < p-1; (ii) 2e < p-1 with all valuations even; (iii) e < p-1 with
/// all valuations zero.
enum class ICondition { SmallRamification, EvenValuations, UnitValuations, None };

inline const char* to_string(ICondition c) {
  switch (c) {
    case ICondition::SmallRamification: return "(i) 4e < p-1";
    case ICondition::EvenValuations: return "(ii) 2e < p-1, valuations even";
    case ICondition::UnitValuations: return "(iii) e < p-1, valuations zero";
    case ICondition::None: return "none";
  }
  return "?";
}

inline ICondition classify_place(const PlaceData& v) {
  const Integer pm1 = v.p - 1;
  const bool even = std::all_of(v.vals.begin(), v.vals.end(), [](int x) { return x % 2 == 0; });
  const bool zero = std::all_of(v.vals.begin(), v.vals.end(), [](int x) { return x == 0; });
  if (Integer(4) * v.e < pm1) return ICondition::SmallRamification;
  if (Integer(2) * v.e < pm1 && even) return ICondition::EvenValuations;
  if (Integer(v.e) < pm1 && zero) return ICondition::UnitValuations;
  return ICondition::None;
}

struct PlaceCheck {
  PlaceData place;
  ICondition condition;
};

struct IMembership {
  Integer p;
  bool member = false;
  std::vector<PlaceCheck> places;
};

/// p is in I iff every place above p satisfies one of the three conditions.
/// Throws MissingPlaces when the description has no data above p.
inline IMembership in_I(const Integer& p, const SurfaceSpec& spec) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("in_I: " + p.str() + " is not an odd prime");
  IMembership out{p, true, {}};
  for (const auto& v : spec.places_above(p)) {
    const ICondition c = classify_place(v);
    out.member = out.member && c != ICondition::None;
    out.places.push_back({v, c});
  }
  return out;
}

struct SingleClassResult {
  bool holds = false;
  /// p > 4m + 1 with m the largest ramification index above p.
  bool shortcut = false;
  unsigned max_e = 0;
  IMembership membership;
};

/// A class of order p^k cannot obstruct when p is in I; p > 4m+1 is the
/// quick sufficient test.
inline SingleClassResult single_class_bound(const Integer& p, const SurfaceSpec& spec) {
  SingleClassResult out;
  out.membership = in_I(p, spec);
  for (const auto& pc : out.membership.places) out.max_e = std::max(out.max_e, pc.place.e);
  out.shortcut = p > Integer(4) * out.max_e + 1;
  out.holds = out.membership.member;
  if (out.shortcut && !out.holds) throw std::logic_error("single_class_bound: p > 4m+1 but p not in I");
  return out;
}

struct GSubsetIResult {
  Verdict verdict;
  BoundReport g;
  std::vector<IMembership> membership;
};

/// Largest candidate prime for which the definitional kernel cross-check is
/// run; beyond it the verdict stays conservative.
inline constexpr std::uint64_t kCertifyLimit = 3000;

inline std::vector<ProbePrime> probes_for(const SurfaceSpec& spec, const std::vector<ProbePrime>& override_probes) {
  if (!override_probes.empty()) return override_probes;
  if (spec.probes.empty()) return default_probes();
  std::vector<ProbePrime> out;
  for (const auto& p : spec.probes) out.push_back(ProbePrime::from(p));
  return out;
}

/// If every odd prime that can divide |Br(X)/Br_0(X)| lies in I, the odd
/// torsion does not obstruct. The G-candidates come from the probe-based
/// superset of S_N, so "holds" is sound while "inconclusive" may be an
/// artefact of too few probes.
inline GSubsetIResult g_subset_i_verdict(const SurfaceSpec& spec, const std::vector<ProbePrime>& probes,
                                         std::uint64_t search_bound,
                                         std::uint64_t budget = kDefaultFactorBudget) {
  GSubsetIResult out;
  out.g = g_superset(spec.N, probes, search_bound, budget);
  const auto survivors = out.g.surviving();
  auto& reasons = out.verdict.reasons;

  for (const auto& [ell, entry] : out.g.candidates) {
    if (entry.status == CandidateStatus::CertifiedExcluded) {
      reasons.push_back("G-superset: " + ell.str() + " excluded by probe " + entry.witnesses.front().str() +
                        " (A = 1)");
    }
  }
  if (survivors.empty()) {
    out.verdict.status = VerdictStatus::HoldsCertified;
    reasons.push_back("G-superset is empty; G subset I holds vacuously");
    return out;
  }

  std::vector<Integer> failing;
  bool certified = true;
  for (const auto& ell : survivors) {
    const auto& entry = out.g.candidates.at(ell);
    auto m = in_I(ell, spec);
    if (m.member) {
      std::string how;
      for (const auto& pc : m.places) how += (how.empty() ? "" : ", ") + std::string(to_string(pc.condition));
      reasons.push_back("G-candidate " + ell.str() + " (phi <= " + std::to_string(*entry.phi_upper) +
                        ") is in I via " + how);
    } else {
      failing.push_back(ell);
      reasons.push_back("G-candidate " + ell.str() + " is not in I");
    }
    if (ell > kCertifyLimit) {
      certified = false;
    } else {
      const ProbePrime witness = ProbePrime::from(entry.witnesses.front());
      const auto d = d_group(witness, spec.N, static_cast<std::uint64_t>(ell), 1);
      if (d.exponent() != static_cast<std::uint64_t>(ell)) {
        throw std::logic_error("kernel cross-check disagrees with the valuation formula at " + ell.str());
      }
    }
    out.membership.push_back(std::move(m));
  }

  if (!failing.empty()) {
    out.verdict.status = VerdictStatus::Inconclusive;
    std::string list;
    for (const auto& p : failing) list += (list.empty() ? "" : ", ") + p.str();
    reasons.push_back("G subset I fails at {" + list + "}");
    return out;
  }
  out.verdict.status = certified ? VerdictStatus::HoldsCertified : VerdictStatus::HoldsConservative;
  reasons.push_back(certified ? "G subset I; every candidate cross-checked against its kernel"
                              : "G subset I over the conservative G-superset");
  return out;
}

struct ValuationSumWitness {
  Integer p;
  PlaceData place;
  int sum = 0;
};

/// First odd p (ascending) with a place v above it where
/// val_v(a) + val_v(b) + val_v(c) + val_v(d) is not 0 mod 4. When it exists
/// the odd part of Br(X)/Br_0(X) is a p-group.
inline std::optional<ValuationSumWitness> valuation_sum_witness(const SurfaceSpec& spec) {
  const auto primes = spec.field.is_literal() ? spec.support_primes() : spec.listed_primes();
  for (const auto& p : primes) {
    for (const auto& v : spec.places_above(p)) {
      const int s = v.val_sum();
      if (((s % 4) + 4) % 4 != 0) return ValuationSumWitness{p, v, s};
    }
  }
  return std::nullopt;
}

/// For literal fields, whether every odd prime lies in I. Off the support of
/// the coefficients and the discriminant, places have e = 1 and unit
/// valuations, so (iii) holds for all p >= 5; 3 and the remaining primes
/// are checked directly. Empty for abstract fields.
inline std::optional<bool> all_odd_primes_in_I(const SurfaceSpec& spec) {
  if (!spec.field.is_literal()) return std::nullopt;
  std::set<Integer> primes{Integer(3)};
  for (const auto& p : spec.support_primes()) primes.insert(p);
  if (spec.field.kind == FieldKind::Quadratic) {
    for (const auto& p : factor(boost::multiprecision::abs(spec.field.d)).primes()) {
      if (p != 2) primes.insert(p);
    }
  }
  for (const auto& p : primes) {
    if (!in_I(p, spec).member) return false;
  }
  return true;
}

struct CombinedResult {
  Verdict verdict;
  std::optional<ValuationSumWitness> p_group;
  std::optional<SingleClassResult> single;
  std::optional<GSubsetIResult> g_subset_i;
};

/// If every odd prime is in I nothing odd obstructs. Otherwise the
/// valuation-sum criterion (odd part is a p-group, and p in I settles it),
/// then the G subset I criterion.
inline CombinedResult combined_odd_verdict(const SurfaceSpec& spec, const std::vector<ProbePrime>& probes,
                                           std::uint64_t search_bound,
                                           std::uint64_t budget = kDefaultFactorBudget) {
  CombinedResult out;
  if (all_odd_primes_in_I(spec).value_or(false)) {
    out.verdict.status = VerdictStatus::HoldsCertified;
    out.verdict.reasons.push_back("all odd primes in I");
    return out;
  }
  out.p_group = valuation_sum_witness(spec);
  if (out.p_group) {
    const auto& w = *out.p_group;
    out.single = single_class_bound(w.p, spec);
    out.verdict.reasons.push_back("valuation sum " + std::to_string(w.sum) + " at a place above " + w.p.str() +
                                  " is not 0 mod 4: odd part is a " + w.p.str() + "-group");
    if (out.single->holds) {
      out.verdict.status = VerdictStatus::HoldsCertified;
      out.verdict.reasons.push_back(w.p.str() + " is in I" +
                                    std::string(out.single->shortcut ? " (p > 4m+1 with m = " +
                                                                           std::to_string(out.single->max_e) + ")"
                                                                     : "") +
                                    ": no class of order a power of " + w.p.str() + " obstructs");
      return out;
    }
    out.verdict.reasons.push_back(w.p.str() + " is not in I; falling back to G subset I");
  }
  out.g_subset_i = g_subset_i_verdict(spec, probes, search_bound, budget);
  out.verdict.status = out.g_subset_i->verdict.status;
  for (const auto& r : out.g_subset_i->verdict.reasons) out.verdict.reasons.push_back(r);
  return out;
}

/// abcd is a square in F, which gives X a genus-one fibration. Defined for
/// Q, Q(i) and Q(sqrt d).
inline bool fibration_square_criterion(const Coefficients& coeffs, const FieldDesc& field) {
  const Rational r = coefficient_product(coeffs);
  switch (field.kind) {
    case FieldKind::Rationals: return is_rational_square(r);
    case FieldKind::GaussianRationals: return is_rational_square(r) || is_rational_square(-r);
    case FieldKind::Quadratic: return is_rational_square(r) || is_rational_square(r / field.d);
    case FieldKind::Abstract: break;
  }
  throw std::invalid_argument("fibration_square_criterion: not defined for abstract fields");
}

/// Odd primes up to range_max that are not in I.
inline std::vector<Integer> i_cofinite_report(const SurfaceSpec& spec, std::uint64_t range_max) {
  std::vector<Integer> out;
  for (const auto p : odd_primes_up_to(range_max)) {
    if (!in_I(p, spec).member) out.emplace_back(p);
  }
  return out;
}

}  // namespace oddbrauer
