#pragma once

// Local verification suites behind `oddbrauer verify-local`: the finite-field
// identities for the curve A and the 2-adic check on the Kummer surface.

#include "oddbrauer/fflab.hpp"
#include "oddbrauer/gaussian.hpp"
#include "oddbrauer/qp2.hpp"

#include <json.hpp>

#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace oddbrauer {

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks) {
      if (!c.ok) return false;
    }
    return true;
  }
};

inline nlohmann::json to_json(const SuiteResult& s) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : s.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"suite", s.suite}, {"ok", s.ok()}, {"checks", checks}};
}

namespace detail {

// Runs one check; an exception counts as a failure with its message.
inline void run_check(SuiteResult& suite, const std::string& name, const std::function<Check()>& body) {
  Check c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.ok = false;
    c.detail = std::string("error: ") + e.what();
  }
  c.name = name;
  suite.checks.push_back(std::move(c));
}

inline std::int64_t minus_two_pow(unsigned n) {
  std::int64_t r = 1;
  for (unsigned k = 0; k < n; ++k) r *= -2;
  return r;
}

}  // namespace detail

/// Point counts, p-part structure, degree-3 growth, automorphisms, the H^1
/// law and threshold monotonicity. `coeffs` replaces the curve equation (a
/// wrong equation must make the suite fail).
inline SuiteResult fflab_suite(const CurveCoefficients& coeffs = CurveCoefficients::supersingular_A()) {
  SuiteResult suite{"fflab", {}};

  detail::run_check(suite, "point-count identity over F_{4^n}, n <= 6", [&] {
    Check c{"", true, ""};
    for (unsigned n = 1; n <= 6; ++n) {
      const std::int64_t t = detail::minus_two_pow(n);
      const std::uint64_t got = count_points(2 * n, coeffs);
      const auto square_form = static_cast<std::uint64_t>((t - 1) * (t - 1));
      const auto trace_form = static_cast<std::uint64_t>((std::int64_t{1} << (2 * n)) + 1 - 2 * t);
      if (got != square_form || got != trace_form) {
        c.ok = false;
        c.detail += "n=" + std::to_string(n) + ": " + std::to_string(got) + " != " + std::to_string(square_form) + "; ";
      }
    }
    if (c.ok) c.detail = "6 degrees";
    return c;
  });

  detail::run_check(suite, "p-part has equal invariant factors, even degree <= 12", [&] {
    Check c{"", true, ""};
    unsigned cases = 0;
    for (unsigned n = 2; n <= kMaxEnumerationDegree; n += 2) {
      const auto order = count_points(n, coeffs);
      for (const auto& p : factor(Integer(order)).primes()) {
        if (p == 2) continue;
        const auto s = group_structure_p_part(n, static_cast<std::uint64_t>(p), coeffs);
        ++cases;
        if (s.k1 != s.k2) {
          c.ok = false;
          c.detail += "n=" + std::to_string(n) + " p=" + p.str() + ": (" + std::to_string(s.k1) + "," +
                      std::to_string(s.k2) + "); ";
        }
      }
    }
    if (c.ok) c.detail = std::to_string(cases) + " (degree, prime) pairs";
    return c;
  });

  detail::run_check(suite, "3-part grows by one factor of 3 in degree-3 extensions", [&] {
    Check c{"", true, ""};
    for (unsigned n : {2U, 4U}) {
      const auto lo = group_structure_p_part(n, 3, coeffs);
      const auto hi = group_structure_p_part(3 * n, 3, coeffs);
      if (hi.k1 != lo.k1 + 1 || hi.k2 != lo.k2 + 1) {
        c.ok = false;
        c.detail += "degree " + std::to_string(n) + " -> " + std::to_string(3 * n) + "; ";
      }
    }
    if (c.ok) c.detail = "degrees 2 -> 6 and 4 -> 12";
    return c;
  });

  detail::run_check(suite, "sigma and rho are automorphisms with sigma^2 = rho^2 = -1, sigma rho = -rho sigma", [&] {
    Check c{"", true, ""};
    for (unsigned n : {2U, 4U, 6U}) {
      if (!check_automorphisms(n, coeffs).ok()) {
        c.ok = false;
        c.detail += "degree " + std::to_string(n) + "; ";
      }
    }
    if (c.ok) c.detail = "degrees 2, 4, 6";
    return c;
  });

  detail::run_check(suite, "H^1(Z/p^m, Z[i]/p^m) = (Z/p^t)^2 with t = min(j, m)", [&] {
    Check c{"", true, ""};
    unsigned cases = 0;
    const std::vector<GaussInt> units{GaussInt(1, 0), GaussInt(0, 1), GaussInt(2, 1), GaussInt(1, 2)};
    for (std::uint64_t p : {3U, 7U, 11U}) {
      for (unsigned m = 1; m <= 2; ++m) {
        for (unsigned j = 1; j <= 2; ++j) {
          for (const auto& g : units) {
            const GaussInt beta = GaussInt(1, 0) + g * GaussInt(static_cast<long long>(j == 1 ? p : p * p), 0);
            const Integer expected = boost::multiprecision::pow(Integer(p), std::min(j, m));
            const auto snf = h1_cyclic_module(p, m, beta);
            const auto raw = h1_cyclic_module_enumerated(p, m, beta);
            ++cases;
            if (!(snf == InvariantPair{expected, expected}) || !(raw == snf)) {
              c.ok = false;
              c.detail += "p=" + std::to_string(p) + " m=" + std::to_string(m) + " beta=" + beta.str() + "; ";
            }
          }
        }
      }
    }
    if (c.ok) c.detail = std::to_string(cases) + " modules, Smith form and enumeration agree";
    return c;
  });

  detail::run_check(suite, "Hasse-Weil threshold monotone in q, antitone in p and g", [&] {
    Check c{"", true, ""};
    std::vector<Integer> qs;
    for (std::uint64_t q = 2; q <= 4096; ++q) {
      if (factor(Integer(q)).entries.size() == 1) qs.emplace_back(q);
    }
    for (int p : {3, 5, 7}) {
      for (int g = 0; g <= 4; ++g) {
        bool seen = false;
        for (const auto& q : qs) {
          const bool t = hasse_weil_threshold(q, p, g);
          if (seen && !t) c.ok = false;
          seen = seen || t;
          if (t && !hasse_weil_threshold(q, p, g == 0 ? 0 : g - 1)) c.ok = false;
          if (t && p > 3 && !hasse_weil_threshold(q, p - 2, g)) c.ok = false;
        }
      }
    }
    c.detail = c.ok ? "prime powers up to 4096" : "monotonicity violated";
    return c;
  });

  return suite;
}

/// Kummer-surface check at `precision` plus a stability rerun four bits
/// higher, and the spot class x = u = 1.
inline SuiteResult kummer_suite(int precision = 12, int cutoff = 8) {
  SuiteResult suite{"kummer", {}};
  std::optional<KummerReport> base;

  detail::run_check(suite, "symbol trivial on every contributing class", [&] {
    base = kummer_example_verify({precision, cutoff});
    std::ostringstream os;
    os << base->violations << " violations; " << base->x_classes << " x-classes, " << base->u_classes
       << " u-classes, " << base->contributing_pairs << " contributing pairs; excluded:";
    for (const auto& e : base->excluded_points) os << " " << e << ";";
    for (const auto& v : base->violation_examples) {
      os << " counterexample " << v.x_class.str() << " x " << v.u_class.str();
    }
    return Check{"", base->violations == 0, os.str()};
  });

  detail::run_check(suite, "f and g are squares outside the enumerated valuation windows", [&] {
    if (!base) throw std::runtime_error("base run failed");
    return Check{"", base->x_shortcut_ok && base->u_shortcut_ok,
                 std::string("x: ") + (base->x_shortcut_ok ? "ok" : "FAILED") +
                     ", u: " + (base->u_shortcut_ok ? "ok" : "FAILED")};
  });

  detail::run_check(suite, "result stable when precision is raised by 4 bits", [&] {
    if (!base) throw std::runtime_error("base run failed");
    const auto hi = kummer_example_verify({precision + 4, cutoff});
    const bool same = hi.violations == base->violations && hi.contributing_profiles == base->contributing_profiles;
    return Check{"", same,
                 "K=" + std::to_string(precision + 4) + ": " + std::to_string(hi.violations) + " violations, " +
                     std::to_string(hi.contributing_profiles.size()) + " contributing profile pairs"};
  });

  detail::run_check(suite, "spot class x = 1, u = 1 lies off the surface", [&] {
    const auto pt = kummer_point(Rational(1), Rational(1));
    return Check{"", !pt.on_surface, "h = -2176 = 2^7 * (-17)"};
  });

  return suite;
}

}  // namespace oddbrauer
