// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "oddbrauer/oddbrauer.hpp"
#include "synthetic.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace oddbrauer;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) {
    r.ok = false;
    r.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s limit)";
  }
  if (!r.ok) ++failures;
  std::printf("%s criterion %d: %s [%.2f s] %s\n", r.ok ? "PASS" : "FAIL", id, title, secs, r.detail.c_str());
  std::fflush(stdout);
}

SurfaceSpec q_spec(int a, int b, int c, int d) {
  return parse_spec(nlohmann::json{{"field", "Q"}, {"coefficients", {a, b, c, d}}});
}

}  // namespace

int main() {
  criterion(1, "exponent bound for N = 40", 5, [] {
    const auto probes = default_probes();
    const Integer e = exponent_bound(40, probes, 100);
    const auto c5 = odd_primes_dividing_delta_norm(ProbePrime::from(5).pi, 40);
    const std::vector<Integer> want{3, 7, 19, 41, 79, 479, 2879};
    return Outcome{e == 408975 && c5 == want, "bound " + e.str() + ", probe-5 primes " + std::to_string(c5.size())};
  });

  criterion(2, "A-value formula against the D-group definition", 30, [] {
    unsigned cases = 0, mismatches = 0;
    for (const auto& probe : default_probes()) {
      for (unsigned m = 1; m <= 6; ++m) {
        for (std::uint64_t ell : {3U, 5U, 7U, 11U, 13U}) {
          if (probe.p == ell) continue;
          unsigned max_n = 0;
          for (std::uint64_t q = ell; q <= 10000; q *= ell) ++max_n;
          const unsigned a = a_value(probe, m, Integer(ell));
          const auto d = a_value_definitional(probe, m, ell, max_n);
          const bool agree = a <= max_n ? d == a : !d.has_value();
          ++cases;
          if (!agree) ++mismatches;
        }
      }
    }
    return Outcome{mismatches == 0, std::to_string(cases) + " cases, " + std::to_string(mismatches) + " mismatches"};
  });

  criterion(3, "point counts over F_{4^n}, n = 1..6", 60, [] {
    bool ok = true;
    for (unsigned n = 1; n <= 6; ++n) {
      std::int64_t t = 1;
      for (unsigned k = 0; k < n; ++k) t *= -2;
      const auto c = static_cast<std::int64_t>(count_points(2 * n));
      ok = ok && c == (t - 1) * (t - 1) && c == (std::int64_t{1} << (2 * n)) + 1 - 2 * t;
    }
    return Outcome{ok, "6 degrees"};
  });

  criterion(4, "p-parts have equal invariant factors; 3-part (3,3) -> (9,9)", 0, [] {
    unsigned cases = 0, violations = 0;
    for (unsigned n = 2; n <= 12; n += 2) {
      for (const auto& p : factor(Integer(count_points(n))).primes()) {
        if (p == 2) continue;
        const auto s = group_structure_p_part(n, static_cast<std::uint64_t>(p));
        ++cases;
        if (s.k1 != s.k2) ++violations;
      }
    }
    const bool step = group_structure_p_part(2, 3) == PPartStructure{1, 1} &&
                      group_structure_p_part(6, 3) == PPartStructure{2, 2};
    return Outcome{violations == 0 && step, std::to_string(cases) + " (degree, prime) pairs, " +
                                                std::to_string(violations) + " violations"};
  });

  criterion(5, "H^1 of cyclic p-groups on Z[i]/p^m", 0, [] {
    unsigned cases = 0, violations = 0;
    const std::vector<GaussInt> units{GaussInt(1), GaussInt(0, 1), GaussInt(2, 1), GaussInt(1, 2), GaussInt(3, 2)};
    for (std::uint64_t p : {3U, 7U, 11U}) {
      for (unsigned m = 1; m <= 2; ++m) {
        for (unsigned j = 1; j <= 2; ++j) {
          for (const auto& u : units) {
            const GaussInt beta = GaussInt(1) + u * GaussInt(static_cast<long long>(j == 1 ? p : p * p));
            const Integer pt = boost::multiprecision::pow(Integer(p), std::min(j, m));
            const auto snf = h1_cyclic_module(p, m, beta);
            ++cases;
            if (!(snf == InvariantPair{pt, pt}) || !(snf == h1_cyclic_module_enumerated(p, m, beta))) ++violations;
          }
        }
      }
    }
    return Outcome{violations == 0, std::to_string(cases) + " modules, " + std::to_string(violations) + " violations"};
  });

  criterion(6, "2-adic Hilbert symbol", 10, [] {
    unsigned pairs = 0, violations = 0;
    for (long long ua : {1, 3, 5, 7}) {
      for (long long ub : {1, 3, 5, 7}) {
        for (int va = 0; va <= 3; ++va) {
          for (int vb = 0; vb <= 3; ++vb) {
            ++pairs;
            const Rational a(ua << va), b(ub << vb);
            if (hilbert2(a, b) != hilbert2_oracle(a, b)) ++violations;
          }
        }
      }
    }
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long long> d(1, 1000000);
    std::bernoulli_distribution neg(0.5);
    auto draw = [&] { return Rational(neg(rng) ? -d(rng) : d(rng), d(rng)); };
    for (int k = 0; k < 1000; ++k) {
      const Rational a = draw(), b = draw(), c = draw();
      if (hilbert2(a, b) != hilbert2(b, a) || hilbert2(a, b * c) != hilbert2(a, b) * hilbert2(a, c) ||
          hilbert2(a, -a) != 1) {
        ++violations;
      }
    }
    return Outcome{violations == 0, std::to_string(pairs) + " oracle pairs, 1000 random triples, " +
                                        std::to_string(violations) + " violations"};
  });

  criterion(7, "Kummer surface: symbol trivial on every Q_2-point", 300, [] {
    const auto lo = kummer_example_verify({12, 8});
    const auto hi = kummer_example_verify({16, 8});
    const bool ok = lo.ok() && hi.ok() && lo.contributing_profiles == hi.contributing_profiles;
    return Outcome{ok, "K=12: " + std::to_string(lo.violations) + " violations over " +
                           std::to_string(lo.contributing_pairs) + " contributing pairs; K=16: " +
                           std::to_string(hi.violations) + " violations"};
  });

  criterion(8, "end-to-end verdicts over Q", 0, [] {
    const auto probes = default_probes();
    const auto a = combined_odd_verdict(q_spec(1, 1, 1, 2), probes, kDefaultSearchBound);
    const auto b = combined_odd_verdict(q_spec(1, 1, 1, 3), probes, kDefaultSearchBound);
    const auto b2 = combined_odd_verdict(q_spec(1, 1, 1, 3), probes, kDefaultSearchBound);
    const auto a2 = combined_odd_verdict(q_spec(1, 1, 1, 2), probes, kDefaultSearchBound);
    const bool ok = a.verdict.holds() && !a.verdict.reasons.empty() && b.p_group && b.p_group->p == 3 &&
                    b.verdict.status == VerdictStatus::Inconclusive && !b.verdict.reasons.empty() &&
                    a.verdict.reasons == a2.verdict.reasons && b.verdict.reasons == b2.verdict.reasons;
    return Outcome{ok, std::string("(1,1,1,2): ") + to_string(a.verdict.status) + "; (1,1,1,3): " +
                           to_string(b.verdict.status) + " with p = 3"};
  });

  criterion(9, "complement of I within {3, 5} on synthetic data", 0, [] {
    std::mt19937_64 rng(9);
    unsigned specs = 0, violations = 0;
    for (unsigned n = 1; n <= 4; ++n) {
      for (int k = 0; k < 25; ++k) {
        const auto spec = synthetic::abstract_spec(n, 200, rng);
        ++specs;
        for (const auto& p : i_cofinite_report(spec, 200)) {
          if (p != 3 && p != 5) ++violations;
        }
      }
    }
    return Outcome{violations == 0, std::to_string(specs) + " synthetic fields, " + std::to_string(violations) + " violations"};
  });

  return failures == 0 ? 0 : 1;
}
