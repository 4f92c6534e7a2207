#pragma once

// Exact integer kernel: big integers, primality, factorization, p-adic
// valuations of rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddbrauer {

// Expression templates off: values behave like plain value types in
// ternaries, lambdas and auto deductions.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;

/// Raised when Pollard-rho exhausts its iteration budget on a composite
/// cofactor. Callers should retry with a larger budget.
class FactorBudgetExceeded : public std::runtime_error {
 public:
  FactorBudgetExceeded(const Integer& cofactor, std::uint64_t budget)
      : std::runtime_error("composite cofactor " + cofactor.str() +
                           " resisted factoring within " +
                           std::to_string(budget) +
                           " iterations; increase the budget"),
        cofactor_(cofactor) {}

  const Integer& cofactor() const noexcept { return cofactor_; }

 private:
  Integer cofactor_;
};

/// Prime -> exponent. Keys are ascending, which keeps every consumer's
/// iteration order deterministic.
struct Factorization {
  std::map<Integer, unsigned> entries;

  Integer value() const {
    Integer r = 1;
    for (const auto& [p, e] : entries) r *= boost::multiprecision::pow(p, e);
    return r;
  }

  std::vector<Integer> primes() const {
    std::vector<Integer> out;
    out.reserve(entries.size());
    for (const auto& kv : entries) out.push_back(kv.first);
    return out;
  }

  bool operator==(const Factorization&) const = default;
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1'000'000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

inline Integer mulmod(const Integer& a, const Integer& b, const Integer& n) {
  return (a * b) % n;
}

inline Integer powmod(const Integer& base, const Integer& exp, const Integer& n) {
  return boost::multiprecision::powm(base, exp, n);
}

// Strong Fermat test to base a; n odd, n > a.
inline bool strong_probable_prime(const Integer& n, const Integer& a) {
  Integer d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  Integer x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
    if (x == 1) return false;
  }
  return false;
}

inline int jacobi(Integer a, Integer n) {
  // n odd positive
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (!boost::multiprecision::bit_test(a, 0)) {
      a >>= 1;
      const auto r = static_cast<unsigned>(n % 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline bool is_perfect_square(const Integer& n) {
  if (n < 0) return false;
  const Integer r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

// Strong Lucas probable-prime test with Selfridge's parameters (method A).
inline bool strong_lucas_probable_prime(const Integer& n) {
  if (is_perfect_square(n)) return false;
  Integer d = 5;
  for (;;) {
    const int j = jacobi(d, n);
    if (j == -1) break;
    if (j == 0 && boost::multiprecision::abs(d) != n) return false;
    d = d > 0 ? -(d + 2) : -(d - 2);
  }
  const Integer p = 1;
  const Integer q = (1 - d) / 4;

  Integer k = n + 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(k, 0)) {
    k >>= 1;
    ++s;
  }

  auto mod = [&](Integer v) {
    v %= n;
    if (v < 0) v += n;
    return v;
  };
  auto half = [&](Integer v) {
    if (boost::multiprecision::bit_test(v, 0)) v += n;
    return mod(v >> 1);
  };

  // Left-to-right binary ladder for U_k, V_k, Q^k.
  Integer u = 1;
  Integer v = p;
  Integer qk = mod(q);
  const auto bits = boost::multiprecision::msb(k);
  for (auto i = static_cast<long>(bits) - 1; i >= 0; --i) {
    u = mod(u * v);
    v = mod(v * v - 2 * qk);
    qk = mod(qk * qk);
    if (boost::multiprecision::bit_test(k, static_cast<unsigned>(i))) {
      const Integer u2 = half(p * u + v);
      const Integer v2 = half(d * u + p * v);
      u = u2;
      v = v2;
      qk = mod(qk * q);
    }
  }
  if (u == 0 || v == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    v = mod(v * v - 2 * qk);
    qk = mod(qk * qk);
    if (v == 0) return true;
  }
  return false;
}

}  // namespace detail

/// Below 2^64 the Miller-Rabin witness set {2..37} is deterministic. Above
/// that, a Baillie-PSW test (base-2 strong test plus strong Lucas) is used;
/// it has no known counterexample and is conclusive for every n checked in
/// published searches (all n < 2^64 and well beyond).
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  static const Integer two64 = Integer(1) << 64;
  if (n < two64) {
    for (std::uint32_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
      if (!detail::strong_probable_prime(n, a)) return false;
    }
    return true;
  }
  return detail::strong_probable_prime(n, 2) && detail::strong_lucas_probable_prime(n);
}

inline constexpr std::uint64_t kDefaultFactorBudget = 10'000'000;

namespace detail {

// Brent's cycle-finding variant of Pollard rho. Seeds are derived from n so
// repeated runs on the same input give the same split.
inline Integer pollard_brent(const Integer& n, std::uint64_t budget) {
  static const Integer mersenne61 = (Integer(1) << 61) - 1;
  const Integer seed = n % mersenne61;
  std::uint64_t spent = 0;
  for (Integer c = 1 + seed % (n - 1);; c = c % (n - 1) + 1) {
    Integer y = (seed * 3 + 2) % n;
    Integer x, ys;
    Integer g = 1;
    Integer q = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t block = 128;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t steps = std::min(block, r - k);
        for (std::uint64_t i = 0; i < steps; ++i) {
          y = (y * y + c) % n;
          q = (q * boost::multiprecision::abs(x - y)) % n;
        }
        g = boost::multiprecision::gcd(q, n);
        k += steps;
        spent += steps;
      }
      r *= 2;
      if (spent > budget) throw FactorBudgetExceeded(n, budget);
    }
    if (g == n) {
      // Backtrack one step at a time from the saved position.
      do {
        ys = (ys * ys + c) % n;
        g = boost::multiprecision::gcd(boost::multiprecision::abs(x - ys), n);
        if (++spent > budget) throw FactorBudgetExceeded(n, budget);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(const Integer& n, std::uint64_t budget, Factorization& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out.entries[n];
    return;
  }
  if (is_perfect_square(n)) {
    const Integer r = boost::multiprecision::sqrt(n);
    factor_into(r, budget, out);
    factor_into(r, budget, out);
    return;
  }
  const Integer d = pollard_brent(n, budget);
  factor_into(d, budget, out);
  factor_into(n / d, budget, out);
}

}  // namespace detail

/// Factorization of |n|: trial division by primes below 10^6, then
/// Pollard-Brent on what remains. Throws FactorBudgetExceeded when a
/// composite cofactor needs more than `budget` rho iterations.
inline Factorization factor(const Integer& n, std::uint64_t budget = kDefaultFactorBudget) {
  if (n == 0) throw std::invalid_argument("factor: n must be nonzero");
  Integer m = boost::multiprecision::abs(n);
  Factorization out;
  for (std::uint32_t p : detail::small_primes()) {
    if (Integer(p) * p > m) break;
    if (m % p != 0) continue;
    unsigned e = 0;
    do {
      m /= p;
      ++e;
    } while (m % p == 0);
    out.entries[Integer(p)] = e;
  }
  detail::factor_into(m, budget, out);
  return out;
}

/// Exponent of p in the integer n != 0.
inline int val_p(const Integer& n, const Integer& p) {
  if (n == 0) throw std::invalid_argument("val_p: zero has infinite valuation");
  int k = 0;
  Integer m = n;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return k;
}

/// Exponent of p in the rational q != 0; negative when p divides the
/// denominator.
inline int val_p(const Rational& q, const Integer& p) {
  if (q == 0) throw std::invalid_argument("val_p: zero has infinite valuation");
  return val_p(boost::multiprecision::numerator(q), p) -
         val_p(boost::multiprecision::denominator(q), p);
}

/// Legendre/Jacobi symbol (a | n) for odd positive n.
inline int jacobi(const Integer& a, const Integer& n) {
  if (n <= 0 || !boost::multiprecision::bit_test(n, 0)) {
    throw std::invalid_argument("jacobi: modulus must be odd and positive");
  }
  return detail::jacobi(a, n);
}

/// Odd primes up to and including `limit`, ascending.
inline std::vector<std::uint64_t> odd_primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 3; n <= limit; n += 2) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

/// Parses "n", "-n" or "n/d" into a reduced rational.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    const Integer num(text.substr(0, slash));
    const Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

/// True iff q = t^2 for some rational t.
inline bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  return detail::is_perfect_square(boost::multiprecision::numerator(q)) &&
         detail::is_perfect_square(boost::multiprecision::denominator(q));
}

/// True iff q = t^4 for some rational t.
inline bool is_rational_fourth_power(const Rational& q) {
  if (q < 0) return false;
  auto fourth = [](const Integer& n) {
    if (!detail::is_perfect_square(n)) return false;
    return detail::is_perfect_square(boost::multiprecision::sqrt(n));
  };
  return fourth(boost::multiprecision::numerator(q)) && fourth(boost::multiprecision::denominator(q));
}

/// True iff n is squarefree (n != 0).
inline bool is_squarefree(const Integer& n) {
  for (const auto& [p, e] : factor(n).entries) {
    if (e > 1) return false;
  }
  return true;
}

}  // namespace oddbrauer
