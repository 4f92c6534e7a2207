#include "oddbrauer/brauer.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace oddbrauer;

namespace {

ProbePrime probe(int p) { return ProbePrime::from(Integer(p)); }

std::vector<ProbePrime> probes(std::initializer_list<int> ps) {
  std::vector<ProbePrime> out;
  for (int p : ps) out.push_back(probe(p));
  return out;
}

}  // namespace

TEST_CASE("a_value examples") {
  CHECK(a_value(probe(5), 1, Integer(3)) == 1);
  CHECK(frobenius_delta(GaussInt(-1, 2), 4) == GaussInt(0, 48));
  CHECK(a_value(probe(5), 4, Integer(3)) == 2);
  CHECK(a_value(probe(13), 40, Integer(5)) == 3);
  CHECK_THROWS_AS(a_value(probe(5), 4, Integer(5)), std::invalid_argument);
}

TEST_CASE("a_value matches the ring-map valuation oracle") {
  for (int p : {5, 13, 17, 29, 37, 41}) {
    const auto pr = probe(p);
    for (unsigned m = 1; m <= 24; ++m) {
      for (int ell : {3, 5, 7, 11, 13, 17, 19, 29, 41}) {
        if (ell == p) continue;
        REQUIRE(a_value(pr, m, Integer(ell)) ==
                oracle::a_value(static_cast<std::int64_t>(pr.pi.re), static_cast<std::int64_t>(pr.pi.im), m,
                                static_cast<std::uint64_t>(ell)));
      }
    }
  }
}

TEST_CASE("a_value is invariant under conjugating pi and monotone along multiples") {
  for (int p : {5, 13, 17}) {
    const ProbePrime pr = probe(p);
    const ProbePrime conj_pr{pr.p, conj(pr.pi)};
    for (unsigned m = 1; m <= 12; ++m) {
      for (int ell : {3, 5, 7, 11, 13}) {
        if (ell == p) continue;
        REQUIRE(a_value(pr, m, Integer(ell)) == a_value(conj_pr, m, Integer(ell)));
        for (unsigned k = 2; k <= 4; ++k) REQUIRE(a_value(pr, m * k, Integer(ell)) >= a_value(pr, m, Integer(ell)));
      }
    }
  }
}

TEST_CASE("d_group examples") {
  CHECK(d_group(probe(5), 4, 3, 1) == KernelStructure{3, 3});
  CHECK(d_group(probe(5), 1, 3, 1) == KernelStructure{1, 1});
  const auto a = a_value(probe(13), 1, Integer(3));
  CHECK(a_value_definitional(probe(13), 1, 3, 6) == std::optional<unsigned>(a));
  CHECK_THROWS_AS(d_group(probe(5), 1, 3, 11), std::invalid_argument);
}

TEST_CASE("d_group matches a naive double loop") {
  // beta^m - 1 = delta * conj(pi)^{-m}; conj(pi) is a unit mod ell^n, so
  // the kernel equals the kernel of delta.
  for (int p : {5, 13, 17}) {
    const auto pr = probe(p);
    for (unsigned m = 1; m <= 8; ++m) {
      const GaussInt delta = frobenius_delta(pr.pi, m);
      for (std::uint64_t ell : {3U, 5U, 7U, 11U, 13U}) {
        if (static_cast<int>(ell) == p) continue;
        std::int64_t M = 1;
        for (unsigned n = 1; n <= 3 && M * static_cast<std::int64_t>(ell) <= 400; ++n) {
          M *= static_cast<std::int64_t>(ell);
          const auto expected = oracle::kernel(static_cast<std::int64_t>(delta.re % M),
                                               static_cast<std::int64_t>(delta.im % M), M);
          const auto got = d_group(pr, m, ell, n);
          REQUIRE(static_cast<std::int64_t>(got.exponent()) == expected.first);
          REQUIRE(static_cast<std::int64_t>(got.order()) == expected.second);
        }
      }
    }
  }
}

TEST_CASE("phi_upper examples") {
  const auto a = phi_upper(Integer(3), 1, 100);
  CHECK(a.value == 0);
  CHECK(a.witness.p == 5);
  const auto b = phi_upper(Integer(5), 40, 100);
  CHECK(b.value == 2);
  CHECK(b.witness.p == 13);
  const auto c = phi_upper(Integer(79), 40, 100);
  CHECK(c.value == 0);
  CHECK(c.witness.p == 17);
  CHECK_THROWS_AS(phi_upper(Integer(3), 1, 12), std::invalid_argument);
  CHECK_THROWS_AS(phi_upper(Integer(9), 1, 100), std::invalid_argument);
}

TEST_CASE("s_candidates from probe 5 at m = 40") {
  const auto r = s_candidates(40, probes({5}));
  std::vector<Integer> odd_norm_primes;
  for (const auto& [ell, e] : r.candidates) {
    if (ell != 5) odd_norm_primes.push_back(ell);
  }
  CHECK(odd_norm_primes == std::vector<Integer>{3, 7, 19, 41, 79, 479, 2879});
  for (const auto& ell : odd_norm_primes) CHECK(r.candidates.at(ell).phi_upper == std::optional<unsigned>(1));

  // Independent route: trial-divide the norm; nothing but these primes and 2 may remain.
  const GaussInt d = frobenius_delta(GaussInt(-1, 2), 40);
  const auto [primes, cofactor] = oracle::small_odd_divisors(oracle::Big(norm(d)), 100000);
  CHECK(cofactor == 1);
  CHECK(primes == std::vector<std::uint64_t>{3, 7, 19, 41, 79, 479, 2879});
}

TEST_CASE("s_candidates with probes 5, 13, 17 at m = 40") {
  const auto r = s_candidates(40, probes({5, 13, 17}));
  CHECK(r.surviving() == std::vector<Integer>{3, 5, 7, 19, 41});
  const std::vector<unsigned> phis{1, 2, 1, 1, 1};
  for (std::size_t k = 0; k < phis.size(); ++k) {
    CHECK(r.candidates.at(r.surviving()[k]).phi_upper == std::optional<unsigned>(phis[k]));
  }
  CHECK(r.candidates.at(79).status == CandidateStatus::CertifiedExcluded);
  CHECK(r.candidates.at(79).witnesses == std::vector<Integer>{17});
  CHECK(r.candidates.at(479).witnesses == std::vector<Integer>{13});
}

TEST_CASE("s_candidates at m = 1 excludes everything") {
  const auto r = s_candidates(1, probes({5, 13}));
  CHECK(r.surviving().empty());
  CHECK(r.exponent_bound() == 1);
}

TEST_CASE("more probes give a subset") {
  for (unsigned m : {4U, 8U, 12U, 20U, 24U, 40U}) {
    const auto few = s_candidates(m, probes({5, 13}));
    const auto more = s_candidates(m, probes({5, 13, 17, 29}));
    for (const auto& ell : more.surviving()) {
      REQUIRE(std::find(few.surviving().begin(), few.surviving().end(), ell) != few.surviving().end());
    }
  }
}

TEST_CASE("exponent bound for m = 40") {
  const auto g = g_superset(40, probes({5, 13, 17}), 100);
  CHECK(g.exponent_bound() == 3 * 25 * 7 * 19 * 41);
  CHECK(g.exponent_bound() == 408975);
  CHECK(exponent_bound(40, probes({5, 13, 17}), 1000) == 408975);
}

TEST_CASE("exponent bound is divisible by 3 for m = 4") {
  CHECK(exponent_bound(4, probes({5, 13}), 100) % 3 == 0);
}

TEST_CASE("exponent bound never grows with the search bound, and multiples of m never shrink it") {
  for (unsigned m : {4U, 8U, 12U, 24U}) {
    const auto base = exponent_bound(m, probes({5, 13, 17}), 13);
    const auto wide = exponent_bound(m, probes({5, 13, 17}), 300);
    CHECK(wide <= base);
    CHECK(base % wide == 0);
    CHECK(exponent_bound(2 * m, probes({5, 13, 17}), 100) % exponent_bound(m, probes({5, 13, 17}), 100) == 0);
  }
}

TEST_CASE("norm factoring stays within the default budget up to m = 60") {
  for (unsigned m = 1; m <= 60; ++m) {
    for (int p : {5, 13, 17}) REQUIRE_NOTHROW(odd_primes_dividing_delta_norm(probe(p).pi, m));
  }
}
