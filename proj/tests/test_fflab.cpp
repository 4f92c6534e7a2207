#include "oddbrauer/fflab.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace oddbrauer;

namespace {

// |ker N| / |im D| on Z[i]/p^m by brute force, N = sum_{k < p^m} beta^k.
std::int64_t h1_order_naive(std::int64_t p, unsigned m, std::int64_t br, std::int64_t bi) {
  std::int64_t M = 1;
  for (unsigned k = 0; k < m; ++k) M *= p;
  auto mul = [&](std::pair<std::int64_t, std::int64_t> x, std::pair<std::int64_t, std::int64_t> y) {
    return std::pair{oracle::mod(x.first * y.first - x.second * y.second, M),
                     oracle::mod(x.first * y.second + x.second * y.first, M)};
  };
  std::pair<std::int64_t, std::int64_t> n{0, 0}, pw{1, 0};
  const std::pair<std::int64_t, std::int64_t> b{oracle::mod(br, M), oracle::mod(bi, M)};
  for (std::int64_t k = 0; k < M; ++k) {
    n = {(n.first + pw.first) % M, (n.second + pw.second) % M};
    pw = mul(pw, b);
  }
  const std::pair<std::int64_t, std::int64_t> d{oracle::mod(br - 1, M), oracle::mod(bi, M)};
  std::int64_t ker = 0;
  std::set<std::pair<std::int64_t, std::int64_t>> image;
  for (std::int64_t x = 0; x < M; ++x) {
    for (std::int64_t y = 0; y < M; ++y) {
      if (mul(n, {x, y}) == std::pair<std::int64_t, std::int64_t>{0, 0}) ++ker;
      image.insert(mul(d, {x, y}));
    }
  }
  return ker / static_cast<std::int64_t>(image.size());
}

}  // namespace

TEST_CASE("point counts agree with the naive count") {
  for (unsigned n = 1; n <= 10; ++n) CHECK(count_points(n) == oracle::count_curve_A(n));
}

TEST_CASE("point counts on the closed form") {
  const std::map<unsigned, std::uint64_t> expected{{1, 3}, {2, 9}, {4, 9}, {6, 81}, {8, 225}, {10, 1089}, {12, 3969}};
  for (const auto& [n, c] : expected) CHECK(count_points(n) == c);
  for (unsigned n = 1; n <= 12; ++n) {
    // Hasse bound |q + 1 - #A| <= 2 sqrt(q).
    const std::int64_t q = std::int64_t{1} << n;
    const auto c = static_cast<std::int64_t>(count_points(n));
    CHECK(std::abs(q + 1 - c) * std::abs(q + 1 - c) <= 4 * q);
  }
}

TEST_CASE("p-part structure examples") {
  CHECK(group_structure_p_part(2, 3) == PPartStructure{1, 1});
  CHECK(group_structure_p_part(6, 3) == PPartStructure{2, 2});
  CHECK(group_structure_p_part(6, 3).p_torsion == 9);
  CHECK(group_structure_p_part(8, 5) == PPartStructure{1, 1});
  CHECK(group_structure_p_part(12, 3) == PPartStructure{2, 2});
  CHECK(group_structure_p_part(12, 7) == PPartStructure{1, 1});
  CHECK_THROWS_AS(group_structure_p_part(2, 5), std::invalid_argument);
  CHECK_THROWS_AS(group_structure_p_part(3, 3), std::invalid_argument);
}

TEST_CASE("automorphisms") {
  CHECK(check_automorphisms(2).ok());
  CHECK(check_automorphisms(4).ok());
  CHECK(check_automorphisms(8).ok());
  CHECK_THROWS_AS(check_automorphisms(3), std::invalid_argument);
  CurveCoefficients ordinary;
  ordinary.a = {1, 0, 0, 0, 1};
  CHECK_FALSE(check_automorphisms(4, ordinary).ok());
}

TEST_CASE("H1 examples") {
  CHECK(h1_cyclic_module(3, 1, GaussInt(4)) == InvariantPair{3, 3});
  CHECK(h1_cyclic_module(3, 2, GaussInt(4)) == InvariantPair{3, 3});
  CHECK(h1_cyclic_module(3, 2, GaussInt(10)) == InvariantPair{9, 9});
  CHECK(h1_cyclic_module(7, 1, GaussInt(1, 7)) == InvariantPair{7, 7});
  CHECK_THROWS_AS(h1_cyclic_module(3, 1, GaussInt(2)), std::invalid_argument);
  CHECK_THROWS_AS(h1_cyclic_module(5, 1, GaussInt(6)), std::invalid_argument);
}

TEST_CASE("H1 order agrees with brute force") {
  for (std::int64_t p : {3, 7}) {
    for (unsigned m = 1; m <= (p == 3 ? 3U : 2U); ++m) {
      for (std::int64_t u : {1, 2, 4}) {
        for (std::int64_t mult : {p, p * p, std::int64_t{0}}) {
          const GaussInt beta(1 + mult * u, mult * (u - 1));
          const auto inv = h1_cyclic_module(static_cast<std::uint64_t>(p), m, beta);
          CAPTURE(p, m, beta.str());
          CHECK(inv.larger * inv.smaller == h1_order_naive(p, m, static_cast<std::int64_t>(beta.re),
                                                           static_cast<std::int64_t>(beta.im)));
          CHECK(inv == h1_cyclic_module_enumerated(static_cast<std::uint64_t>(p), m, beta));
        }
      }
    }
  }
}

TEST_CASE("Smith normal form invariants") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> d(-30, 30);
  for (int k = 0; k < 300; ++k) {
    const std::size_t rows = 2 + k % 2, cols = 2 + (k / 2) % 2;
    IntMatrix a(rows, std::vector<Integer>(cols));
    for (auto& r : a) {
      for (auto& x : r) x = d(rng);
    }
    const auto snf = smith_normal_form(a);
    CHECK(detail::matmul(detail::matmul(snf.u, a), snf.v) == snf.s);
    CHECK(detail::matmul(snf.u, snf.u_inv) == detail::identity(rows));
    const std::size_t r = std::min(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        if (i != j) REQUIRE(snf.s[i][j] == 0);
      }
    }
    for (std::size_t i = 0; i < r; ++i) REQUIRE(snf.s[i][i] >= 0);
    for (std::size_t i = 0; i + 1 < r; ++i) {
      if (snf.s[i][i] == 0) {
        REQUIRE(snf.s[i + 1][i + 1] == 0);
      } else {
        REQUIRE(snf.s[i + 1][i + 1] % snf.s[i][i] == 0);
      }
    }
  }
}

TEST_CASE("threshold examples") {
  CHECK(hasse_weil_threshold(121, 3, 2));
  CHECK_FALSE(hasse_weil_threshold(121, 3, 3));
  CHECK(hasse_weil_threshold(1024, 3, 2));
  for (int p : {3, 5, 7, 11}) CHECK(hasse_weil_threshold(4, p, 1));
  CHECK(hasse_weil_threshold(2, 101, 0));
  CHECK_FALSE(cone_threshold(169, 3));
  CHECK(cone_threshold(289, 3));
  CHECK_FALSE(cone_threshold(4, 3));
  CHECK_THROWS_AS(cone_threshold(6, 3), std::invalid_argument);
  CHECK_THROWS_AS(hasse_weil_threshold(9, 3, -1), std::invalid_argument);
}

TEST_CASE("threshold agrees with floating point away from the boundary") {
  for (std::uint64_t q = 2; q <= 5000; ++q) {
    if (!detail::is_prime_power(Integer(q))) continue;
    const double lhs = std::sqrt(double(q)) + 1 / std::sqrt(double(q));
    for (int p : {3, 5, 7}) {
      const double rhs = 2.0 * (2 * p + 1);
      if (std::abs(lhs - rhs) > 1e-6) REQUIRE(cone_threshold(q, p) == (lhs > rhs));
    }
  }
}

TEST_CASE("Swan bound examples") {
  const auto a = swan_bound(1, 2, 1);
  CHECK((a.upper == 2 && a.multiple_of == 2));
  CHECK(a.admissible() == std::vector<Integer>{0, 2});
  const auto b = swan_bound(2, 3, 1);
  CHECK((b.upper == 3 && b.multiple_of == 3));
  const auto c = swan_bound(1, 5, 1);
  CHECK((c.upper == 1 && c.multiple_of == 5));
  CHECK(c.admissible() == std::vector<Integer>{0});
  CHECK_THROWS_AS(swan_bound(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(swan_bound(1, 4, 1), std::invalid_argument);
}
