#include "oddbrauer/gaussian.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace oddbrauer;

TEST_CASE("ring operations") {
  CHECK(conj(GaussInt(-1, 2)) == GaussInt(-1, -2));
  CHECK(norm(GaussInt(3, 2)) == 13);
  CHECK(exact_div(GaussInt(-2, 2), GaussInt(1, 1)) == GaussInt(0, 2));
  CHECK(exact_div(GaussInt(-1, 2) - GaussInt(1), pow(GaussInt(1, 1), 3)) == GaussInt(1));
  CHECK_THROWS_WITH(exact_div(GaussInt(3), GaussInt(1, 1)), Catch::Matchers::ContainsSubstring("not divide"));
  CHECK(pow(GaussInt(-1, 2), 4) == GaussInt(-7, 24));
}

TEST_CASE("is_primary examples") {
  CHECK(is_primary(GaussInt(-1, 2)));
  CHECK_FALSE(is_primary(GaussInt(2, 1)));
  CHECK(is_primary(GaussInt(1)));
  int primary = 0;
  for (const auto& a : associates(GaussInt(2, 1))) primary += is_primary(a) ? 1 : 0;
  CHECK(primary == 1);
}

TEST_CASE("primary_generator examples") {
  CHECK(primary_generator(Integer(5)) == GaussInt(-1, 2));
  CHECK(primary_generator(Integer(13)) == GaussInt(3, 2));
  const GaussInt g17 = primary_generator(Integer(17));
  CHECK(norm(g17) == 17);
  CHECK(is_primary(g17));
  CHECK(g17 == GaussInt(1, 4));
  CHECK_THROWS_AS(primary_generator(Integer(7)), std::invalid_argument);
  CHECK_THROWS_AS(primary_generator(Integer(21)), std::invalid_argument);
}

TEST_CASE("exactly one primary associate for odd-norm primes of norm <= 10^4") {
  int checked = 0;
  for (long long a = -100; a <= 100; ++a) {
    for (long long b = -100; b <= 100; ++b) {
      const long long n = a * a + b * b;
      if (n > 10000 || n % 2 == 0) continue;
      // Gaussian primes: prime norm, or a rational prime 3 mod 4 up to units.
      const bool prime = oracle::is_prime(static_cast<std::uint64_t>(n)) ||
                         ((a == 0 || b == 0) && oracle::is_prime(static_cast<std::uint64_t>(std::abs(a + b))) &&
                          std::abs(a + b) % 4 == 3);
      if (!prime) continue;
      int primary = 0;
      for (const auto& x : associates(GaussInt(a, b))) primary += is_primary(x) ? 1 : 0;
      REQUIRE(primary == 1);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("places_above examples") {
  const auto p3 = places_above(Integer(3));
  REQUIRE(p3.size() == 1);
  CHECK(p3[0].kind == PlaceKind::Inert);
  CHECK(p3[0].generator == GaussInt(3));
  const auto p5 = places_above(Integer(5));
  REQUIRE(p5.size() == 2);
  CHECK(p5[0].generator == GaussInt(2, 1));
  CHECK(p5[1].generator == GaussInt(2, -1));
  CHECK(places_above(Integer(7)).size() == 1);
  CHECK_THROWS_AS(places_above(Integer(2)), std::invalid_argument);
  CHECK_THROWS_AS(places_above(Integer(9)), std::invalid_argument);
}

TEST_CASE("gauss_val examples") {
  CHECK(gauss_val(GaussInt(0, 48), places_above(Integer(3))[0]) == 1);
  CHECK(gauss_val(GaussInt(0, 4), places_above(Integer(5))[0]) == 0);
  CHECK(gauss_val(GaussInt(-2, 2), places_above(Integer(3))[0]) == 0);
  CHECK(gauss_val(pow(GaussInt(2, 1), 5) * GaussInt(2, -1), places_above(Integer(5))[0]) == 5);
}

TEST_CASE("gauss_val properties on random elements") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long long> d(-2000, 2000);
  for (int k = 0; k < 500; ++k) {
    GaussInt x(d(rng), d(rng)), y(d(rng), d(rng));
    if (x.is_zero()) x = GaussInt(1);
    if (y.is_zero()) y = GaussInt(0, 1);
    for (int ell : {3, 5, 7, 13, 17}) {
      const auto places = places_above(Integer(ell));
      int weighted = 0;
      for (const auto& v : places) {
        REQUIRE(gauss_val(x * y, v) == gauss_val(x, v) + gauss_val(y, v));
        weighted += static_cast<int>(v.residue_degree() * gauss_val(x, v));
        if (v.kind == PlaceKind::Split) {
          REQUIRE(gauss_val(x, v) == oracle::split_valuation(oracle::Big(x.re), oracle::Big(x.im),
                                                             oracle::Big(v.generator.re), oracle::Big(v.generator.im),
                                                             oracle::Big(ell)));
        }
      }
      REQUIRE(weighted == val_p(norm(x), Integer(ell)));
    }
  }
}
