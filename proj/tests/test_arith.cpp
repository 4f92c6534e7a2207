#include "oddbrauer/arith.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace oddbrauer;

TEST_CASE("is_prime examples") {
  CHECK(is_prime(Integer(2879)));
  CHECK(is_prime(Integer(479)));
  CHECK_FALSE(is_prime(Integer(1)));
  CHECK_FALSE(is_prime(Integer(0)));
  CHECK_FALSE(is_prime(Integer(1379041)));
}

TEST_CASE("is_prime agrees with trial division up to 10^6") {
  std::uint64_t mismatches = 0;
  for (std::uint64_t n = 0; n <= 1'000'000; ++n) {
    if (is_prime(Integer(n)) != oracle::is_prime(n)) ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("is_prime beyond the sieve and beyond 64 bits") {
  CHECK(is_prime(Integer("18446744073709551557")));   // largest prime below 2^64
  CHECK_FALSE(is_prime(Integer("18446744073709551617")));  // 2^64 + 1 = 274177 * 67280421310721
  CHECK(is_prime(Integer("170141183460469231731687303715884105727")));  // 2^127 - 1
  CHECK_FALSE(is_prime(Integer("3825123056546413051")));  // strong pseudoprime to bases 2..23
  CHECK_FALSE(is_prime(Integer("318665857834031151167461")));  // strong pseudoprime to bases 2..37
  CHECK_FALSE(is_prime(Integer(561)));
  CHECK_FALSE(is_prime(Integer(3215031751ULL)));
}

TEST_CASE("factor examples") {
  CHECK(factor(Integer(9)).entries == std::map<Integer, unsigned>{{3, 2}});
  CHECK(factor(Integer(1379041)).entries == std::map<Integer, unsigned>{{479, 1}, {2879, 1}});
  CHECK(factor(Integer(48)).entries == std::map<Integer, unsigned>{{2, 4}, {3, 1}});
  CHECK(factor(Integer(-48)).value() == 48);
  CHECK(factor(Integer(1)).entries.empty());
  CHECK_THROWS_AS(factor(Integer(0)), std::invalid_argument);
}

TEST_CASE("factor agrees with trial division on random 40-bit integers") {
  std::mt19937_64 rng(12345);
  for (int k = 0; k < 300; ++k) {
    const std::uint64_t n = (rng() >> 24) + 2;
    const auto got = factor(Integer(n));
    std::map<Integer, unsigned> expected;
    for (const auto& [p, e] : oracle::factor(n)) expected[Integer(p)] = e;
    REQUIRE(got.entries == expected);
  }
}

TEST_CASE("factor reassembles large semiprimes through Pollard-Brent") {
  const Integer p("1000000007"), q("998244353"), r("4294967311");
  const Integer n = p * q * r * r;
  const auto f = factor(n);
  CHECK(f.value() == n);
  CHECK(f.entries == std::map<Integer, unsigned>{{q, 1}, {p, 1}, {r, 2}});
  for (const auto& [prime, e] : f.entries) CHECK(is_prime(prime));
}

TEST_CASE("factor is deterministic") {
  const Integer n = Integer("32460063243701101") * 3;
  CHECK(factor(n) == factor(n));
}

TEST_CASE("factor signals an exhausted budget") {
  const Integer n = Integer("1000000007") * Integer("998244353");
  CHECK_THROWS_AS(factor(n, 1), FactorBudgetExceeded);
  try {
    factor(n, 1);
  } catch (const FactorBudgetExceeded& e) {
    CHECK(e.cofactor() == n);
  }
}

TEST_CASE("val_p examples") {
  CHECK(val_p(Rational(48), Integer(3)) == 1);
  CHECK(val_p(Rational(1, 4), Integer(2)) == -2);
  CHECK(val_p(Rational(3), Integer(5)) == 0);
  CHECK(val_p(Rational(-250, 3), Integer(5)) == 3);
}

TEST_CASE("val_p is additive on random rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-100000, 100000), den(1, 100000);
  for (int k = 0; k < 1000; ++k) {
    long long a = num(rng), b = num(rng);
    if (a == 0) a = 1;
    if (b == 0) b = -1;
    const Rational x(a, den(rng)), y(b, den(rng));
    for (int p : {2, 3, 5, 7}) REQUIRE(val_p(x * y, Integer(p)) == val_p(x, Integer(p)) + val_p(y, Integer(p)));
  }
}

TEST_CASE("rational parsing and powers") {
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("17") == Rational(17));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(is_rational_square(Rational(9, 4)));
  CHECK_FALSE(is_rational_square(Rational(-9, 4)));
  CHECK(is_rational_fourth_power(Rational(16, 81)));
  CHECK_FALSE(is_rational_fourth_power(Rational(4)));
  CHECK(is_squarefree(Integer(-15)));
  CHECK_FALSE(is_squarefree(Integer(12)));
}

TEST_CASE("jacobi symbol") {
  CHECK(jacobi(Integer(5), Integer(3)) == -1);
  CHECK(jacobi(Integer(-1), Integer(5)) == 1);
  CHECK(jacobi(Integer(-1), Integer(7)) == -1);
  CHECK(jacobi(Integer(2), Integer(7)) == 1);
  CHECK(jacobi(Integer(3), Integer(9)) == 0);
}
