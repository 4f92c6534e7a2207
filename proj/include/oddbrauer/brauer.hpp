#pragma once

// Bounds on the odd primes (and their exponents) that can divide the order
// of Br(X)/Br_0(X) for a diagonal quartic X. Frobenius at a prime p of Q(i)
// acts on the l-power torsion of the Fermat quartic's Brauer group through
// beta = pi / conj(pi), where pi is the primary generator of p. The quantity
// A(p, m; l) = 1 + max_v val_v(beta^m - 1) over the places v above l bounds
// the order of an l-power element fixed by Frob^m, and phi(l, m) is the
// minimum of A - 1 over all admissible p.
//
// Only upper bounds are ever certified: phi(l, m) is a minimum over
// infinitely many primes, so a finite probe set yields a superset of
// S_m = { l : phi(l, m) > 0 }. Exclusion of l is certified by a witness
// probe with A = 1; inclusion is not.

#include "oddbrauer/arith.hpp"
#include "oddbrauer/gaussian.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oddbrauer {

/// A prime p = 1 mod 4 together with the primary generator of one of the
/// primes of Z[i] above it. A-values do not depend on which of the two
/// conjugate generators is used.
struct ProbePrime {
  Integer p;
  GaussInt pi;

  static ProbePrime from(const Integer& p) { return ProbePrime{p, primary_generator(p)}; }

  friend bool operator==(const ProbePrime&, const ProbePrime&) = default;
};

inline std::vector<ProbePrime> default_probes() {
  return {ProbePrime::from(5), ProbePrime::from(13), ProbePrime::from(17)};
}

inline constexpr std::uint64_t kDefaultSearchBound = 1000;

/// pi^m - conj(pi)^m, a nonzero purely imaginary Gaussian integer.
inline GaussInt frobenius_delta(const GaussInt& pi, unsigned long long m) {
  return pow(pi, m) - pow(conj(pi), m);
}

namespace detail {

inline unsigned max_valuation(const GaussInt& delta, const std::vector<GaussPlace>& places) {
  unsigned best = 0;
  for (const auto& v : places) best = std::max(best, gauss_val(delta, v));
  return best;
}

inline void check_probe_against(const ProbePrime& probe, const Integer& ell) {
  if (ell == 2 || !is_prime(ell)) throw std::invalid_argument("ell must be an odd prime, got " + ell.str());
  if (probe.p == 2 || probe.p == ell) {
    throw std::invalid_argument("probe " + probe.p.str() + " divides 2*" + ell.str());
  }
}

}  // namespace detail

/// A(p, m; ell) computed from valuations: 1 + max over places v above ell of
/// val_v(pi^m - conj(pi)^m). conj(pi) is a unit at every such v, so this is
/// the valuation of beta^m - 1.
inline unsigned a_value(const ProbePrime& probe, unsigned long long m, const Integer& ell) {
  detail::check_probe_against(probe, ell);
  if (m == 0) throw std::invalid_argument("a_value: m must be positive");
  return 1 + detail::max_valuation(frobenius_delta(probe.pi, m), places_above(ell));
}

/// Invariant factors (first >= second) of a subgroup of (Z/ell^n)^2,
/// plus its exponent.
struct KernelStructure {
  std::uint64_t first = 1;
  std::uint64_t second = 1;

  std::uint64_t exponent() const { return first; }
  std::uint64_t order() const { return first * second; }

  friend bool operator==(const KernelStructure&, const KernelStructure&) = default;
};

inline constexpr std::uint64_t kMaxKernelModulus = 100'000;

/// Kernel of multiplication by beta^m - 1 on Z[i]/ell^n, by enumeration.
/// beta = pi * conj(pi)^{-1} is formed inside the finite ring, so this does
/// not touch the valuation formula used by a_value.
inline KernelStructure d_group(const ProbePrime& probe, unsigned long long m, std::uint64_t ell,
                               unsigned n) {
  detail::check_probe_against(probe, Integer(ell));
  if (n == 0) throw std::invalid_argument("d_group: n must be positive");
  std::uint64_t mod = 1;
  for (unsigned k = 0; k < n; ++k) {
    mod *= ell;
    if (mod > kMaxKernelModulus) throw std::invalid_argument("d_group: ell^n exceeds enumeration limit");
  }
  using U = std::uint64_t;
  auto red = [mod](const Integer& x) {
    Integer r = x % mod;
    if (r < 0) r += mod;
    return static_cast<U>(r);
  };
  struct Elem {
    U re, im;
  };
  auto mul = [mod](Elem a, Elem b) {
    return Elem{(a.re * b.re + (mod - a.im) * b.im % mod) % mod, (a.re * b.im + a.im * b.re) % mod};
  };
  auto inverse_mod = [](U a, U m_) -> std::optional<U> {
    long long t = 0, new_t = 1;
    long long r = static_cast<long long>(m_), new_r = static_cast<long long>(a % m_);
    while (new_r != 0) {
      const long long q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += static_cast<long long>(m_);
    return static_cast<U>(t);
  };

  const Elem pi{red(probe.pi.re), red(probe.pi.im)};
  const Elem pibar{pi.re, (mod - pi.im) % mod};
  // (a+bi)^{-1} = (a-bi) / (a^2+b^2)
  const U nrm = (pibar.re * pibar.re + pibar.im * pibar.im) % mod;
  const auto nrm_inv = inverse_mod(nrm, mod);
  if (!nrm_inv) throw std::domain_error("d_group: conj(pi) is not invertible mod ell^n");
  const Elem pibar_inv{pibar.re * *nrm_inv % mod, (mod - pibar.im) % mod * *nrm_inv % mod};
  const Elem beta = mul(pi, pibar_inv);

  Elem g{1, 0};
  for (unsigned long long k = 0; k < m; ++k) g = mul(g, beta);
  g.re = (g.re + mod - 1) % mod;

  // g*(a+bi) = (g0 a - g1 b) + (g1 a + g0 b) i. Solve the congruence whose
  // b-coefficient has the smaller gcd with mod, then test the other one.
  const U c1 = (mod - g.im) % mod;  // b-coefficient of the real part
  const U c2 = g.re;                // b-coefficient of the imaginary part
  const U g1 = std::gcd(c1, mod);
  const U g2 = std::gcd(c2, mod);
  const bool use_real = g1 <= g2;
  const U coeff_b = use_real ? c1 : c2;
  const U coeff_a = use_real ? g.re : g.im;
  const U step_gcd = std::gcd(coeff_b, mod);
  const U sub_mod = mod / step_gcd;
  const U coeff_b_inv = sub_mod == 1 ? 0 : *inverse_mod(coeff_b / step_gcd % sub_mod, sub_mod);

  std::uint64_t count = 0;
  U max_order = 1;
  for (U a = 0; a < mod; ++a) {
    const U rhs = (mod - coeff_a * a % mod) % mod;  // coeff_b * b = rhs
    if (rhs % step_gcd != 0) continue;
    const U b0 = sub_mod == 1 ? 0 : (rhs / step_gcd) % sub_mod * coeff_b_inv % sub_mod;
    for (U b = b0; b < mod; b += sub_mod) {
      const Elem prod = mul(g, Elem{a, b});
      if (prod.re != 0 || prod.im != 0) continue;
      ++count;
      const U order = mod / std::gcd(std::gcd(a, b), mod);
      max_order = std::max(max_order, order);
    }
  }
  return KernelStructure{max_order, count / max_order};
}

/// Least tau <= max_n with exponent(D_{p,m;ell^tau}) < ell^tau, found by
/// enumeration; empty if no such tau exists in range.
inline std::optional<unsigned> a_value_definitional(const ProbePrime& probe, unsigned long long m,
                                                    std::uint64_t ell, unsigned max_n) {
  std::uint64_t mod = 1;
  for (unsigned tau = 1; tau <= max_n; ++tau) {
    mod *= ell;
    if (mod > kMaxKernelModulus) break;
    if (d_group(probe, m, ell, tau).exponent() < mod) return tau;
  }
  return std::nullopt;
}

struct PhiBound {
  unsigned value;
  ProbePrime witness;
};

/// Upper bound for phi(ell, m) from every prime p = 1 mod 4 with
/// p <= search_bound and p != ell (primes 3 mod 4 give A = infinity). The
/// witness is the smallest p attaining the minimum.
inline PhiBound phi_upper(const Integer& ell, unsigned long long m, std::uint64_t search_bound) {
  if (search_bound < 13) throw std::invalid_argument("phi_upper: search_bound must be at least 13");
  if (ell == 2 || !is_prime(ell)) throw std::invalid_argument("phi_upper: ell must be an odd prime");
  const auto places = places_above(ell);
  std::optional<PhiBound> best;
  for (std::uint64_t p = 5; p <= search_bound; p += 4) {
    if (Integer(p) == ell || !is_prime(p)) continue;
    const ProbePrime probe = ProbePrime::from(p);
    const unsigned v = detail::max_valuation(frobenius_delta(probe.pi, m), places);
    if (!best || v < best->value) best = PhiBound{v, probe};
    if (v == 0) break;
  }
  if (!best) throw std::invalid_argument("phi_upper: no admissible probe below search_bound");
  return *best;
}

enum class CandidateStatus { CertifiedExcluded, Candidate };

inline const char* to_string(CandidateStatus s) {
  return s == CandidateStatus::CertifiedExcluded ? "excluded" : "candidate";
}

struct CandidateEntry {
  /// Empty means no admissible probe has bounded this prime yet.
  std::optional<unsigned> phi_upper;
  CandidateStatus status = CandidateStatus::Candidate;
  /// Probe primes attaining phi_upper (for exclusions: the excluding probe).
  std::vector<Integer> witnesses;
};

struct BoundReport {
  unsigned long long m = 0;
  std::map<Integer, CandidateEntry> candidates;
  std::vector<ProbePrime> probes_used;
  /// 0 when no search-bound refinement was applied.
  std::uint64_t search_bound = 0;

  std::vector<Integer> surviving() const {
    std::vector<Integer> out;
    for (const auto& [ell, entry] : candidates) {
      if (entry.status == CandidateStatus::Candidate) out.push_back(ell);
    }
    return out;
  }

  /// Product of ell^phi_upper over surviving candidates.
  Integer exponent_bound() const {
    Integer r = 1;
    for (const auto& [ell, entry] : candidates) {
      if (entry.status != CandidateStatus::Candidate) continue;
      if (!entry.phi_upper) {
        throw std::logic_error("exponent bound undefined: " + ell.str() + " has no admissible probe");
      }
      r *= boost::multiprecision::pow(ell, *entry.phi_upper);
    }
    return r;
  }
};

/// Odd primes dividing Norm(pi^m - conj(pi)^m). The difference is split into
/// its homogeneous cyclotomic factors Phi_d(pi, conj pi), d | m, whose norms
/// are far smaller than the whole and factor quickly.
inline std::vector<Integer> odd_primes_dividing_delta_norm(const GaussInt& pi, unsigned long long m,
                                                           std::uint64_t budget = kDefaultFactorBudget) {
  std::vector<unsigned long long> divisors;
  for (unsigned long long d = 1; d <= m; ++d) {
    if (m % d == 0) divisors.push_back(d);
  }
  std::map<unsigned long long, GaussInt> cyclotomic;
  std::set<Integer> primes;
  for (const auto d : divisors) {
    GaussInt piece = frobenius_delta(pi, d);
    for (const auto& [e, phi_e] : cyclotomic) {
      if (d % e == 0) piece = exact_div(piece, phi_e);
    }
    cyclotomic.emplace(d, piece);
    for (const auto& q : factor(norm(piece), budget).primes()) {
      if (q != 2) primes.insert(q);
    }
  }
  return {primes.begin(), primes.end()};
}

/// Conservative superset of S_m from a finite probe list. Candidates are the
/// odd prime divisors of Norm(delta) for the first probe (any l in S_m other
/// than that probe's prime divides it) plus the first probe's prime; each is
/// then tested against every probe whose prime differs from it.
inline BoundReport s_candidates(unsigned long long m, const std::vector<ProbePrime>& probes,
                                std::uint64_t budget = kDefaultFactorBudget) {
  if (probes.empty()) throw std::invalid_argument("s_candidates: probe list is empty");
  if (m == 0) throw std::invalid_argument("s_candidates: m must be positive");
  BoundReport report;
  report.m = m;
  for (const auto& probe : probes) {
    if (probe.p % 4 != 1 || !is_prime(probe.p) || norm(probe.pi) != probe.p || !is_primary(probe.pi)) {
      throw std::invalid_argument("invalid probe prime " + probe.p.str());
    }
    bool seen = false;
    for (const auto& q : report.probes_used) seen = seen || q.p == probe.p;
    if (!seen) report.probes_used.push_back(probe);
  }

  std::vector<GaussInt> deltas;
  for (const auto& probe : report.probes_used) deltas.push_back(frobenius_delta(probe.pi, m));

  std::set<Integer> initial;
  for (const auto& q : odd_primes_dividing_delta_norm(report.probes_used.front().pi, m, budget)) {
    initial.insert(q);
  }
  initial.insert(report.probes_used.front().p);

  for (const auto& ell : initial) {
    CandidateEntry entry;
    const auto places = places_above(ell);
    for (std::size_t k = 0; k < report.probes_used.size(); ++k) {
      const auto& probe = report.probes_used[k];
      if (probe.p == ell) continue;
      const unsigned v = detail::max_valuation(deltas[k], places);
      if (!entry.phi_upper || v < *entry.phi_upper) {
        entry.phi_upper = v;
        entry.witnesses = {probe.p};
      } else if (v == *entry.phi_upper) {
        entry.witnesses.push_back(probe.p);
      }
      if (v == 0) {
        entry.status = CandidateStatus::CertifiedExcluded;
        entry.witnesses = {probe.p};
        break;
      }
    }
    report.candidates.emplace(ell, std::move(entry));
  }
  return report;
}

/// Tightens every surviving candidate with phi_upper(ell, m, search_bound).
inline BoundReport refine(BoundReport report, std::uint64_t search_bound) {
  report.search_bound = search_bound;
  for (auto& [ell, entry] : report.candidates) {
    if (entry.status != CandidateStatus::Candidate) continue;
    const PhiBound b = phi_upper(ell, report.m, search_bound);
    if (!entry.phi_upper || b.value < *entry.phi_upper) {
      entry.phi_upper = b.value;
      entry.witnesses = {b.witness.p};
    } else if (b.value == *entry.phi_upper &&
               std::find(entry.witnesses.begin(), entry.witnesses.end(), b.witness.p) == entry.witnesses.end()) {
      entry.witnesses.push_back(b.witness.p);
    }
    if (*entry.phi_upper == 0) {
      entry.status = CandidateStatus::CertifiedExcluded;
      entry.witnesses = {b.witness.p};
    }
  }
  return report;
}

/// The candidate set for G = S_N: s_candidates followed by refinement.
inline BoundReport g_superset(unsigned long long m, const std::vector<ProbePrime>& probes,
                              std::uint64_t search_bound, std::uint64_t budget = kDefaultFactorBudget) {
  return refine(s_candidates(m, probes, budget), search_bound);
}

/// An integer killing every odd-torsion element of Br(X)/Br_0(X) whenever m
/// is a multiple of the Galois exponent N.
inline Integer exponent_bound(unsigned long long m, const std::vector<ProbePrime>& probes,
                              std::uint64_t search_bound, std::uint64_t budget = kDefaultFactorBudget) {
  return g_superset(m, probes, search_bound, budget).exponent_bound();
}

}  // namespace oddbrauer
