#pragma once

// Exact arithmetic in Z[i], primary prime generators and the places of Q(i)
// above odd rational primes.

#include "oddbrauer/arith.hpp"

#include <array>
#include <concepts>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddbrauer {

struct GaussInt {
  Integer re = 0;
  Integer im = 0;

  GaussInt() = default;
  GaussInt(Integer r, Integer i = 0) : re(std::move(r)), im(std::move(i)) {}
  template <std::integral A, std::integral B = int>
  GaussInt(A r, B i = 0) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }

  friend bool operator==(const GaussInt&, const GaussInt&) = default;

  friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
  friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussInt& operator+=(const GaussInt& o) { return *this = *this + o; }
  GaussInt& operator-=(const GaussInt& o) { return *this = *this - o; }
  GaussInt& operator*=(const GaussInt& o) { return *this = *this * o; }

  std::string str() const {
    if (im == 0) return re.str();
    std::string out = re == 0 ? "" : re.str();
    if (im > 0 && re != 0) out += "+";
    if (im == 1) {
      out += "i";
    } else if (im == -1) {
      out += "-i";
    } else {
      out += im.str() + "i";
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussInt& z) { return os << z.str(); }
};

inline Integer norm(const GaussInt& x) { return x.re * x.re + x.im * x.im; }
inline GaussInt conj(const GaussInt& x) { return {x.re, -x.im}; }

/// True iff y | x in Z[i]; y != 0.
inline bool divides(const GaussInt& y, const GaussInt& x) {
  if (y.is_zero()) throw std::invalid_argument("divides: zero divisor");
  const GaussInt t = x * conj(y);
  const Integer n = norm(y);
  return t.re % n == 0 && t.im % n == 0;
}

/// Exact quotient x / y; throws when y does not divide x.
inline GaussInt exact_div(const GaussInt& x, const GaussInt& y) {
  if (y.is_zero()) throw std::invalid_argument("exact_div: zero divisor");
  const GaussInt t = x * conj(y);
  const Integer n = norm(y);
  if (t.re % n != 0 || t.im % n != 0) {
    throw std::domain_error("exact_div: " + y.str() + " does not divide " + x.str());
  }
  return {t.re / n, t.im / n};
}

inline GaussInt pow(GaussInt base, unsigned long long e) {
  GaussInt r{1, 0};
  while (e != 0) {
    if (e & 1U) r *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return r;
}

/// The four associates x, ix, -x, -ix.
inline std::array<GaussInt, 4> associates(const GaussInt& x) {
  const GaussInt i{0, 1};
  return {x, i * x, -x, -(i * x)};
}

/// x = 1 mod (1+i)^3, i.e. (1+i)^3 = -2+2i divides x - 1.
inline bool is_primary(const GaussInt& x) {
  if (x.is_zero()) throw std::invalid_argument("is_primary: zero");
  return divides(GaussInt{-2, 2}, x - GaussInt{1, 0});
}

namespace detail {

// x with x^2 = -1 mod p, for a prime p = 1 mod 4.
inline Integer sqrt_minus_one(const Integer& p) {
  const Integer e = (p - 1) / 4;
  for (Integer c = 2;; ++c) {
    const Integer r = powmod(c, e, p);
    if (mulmod(r, r, p) == p - 1) return r;
  }
}

// (a, b) with a^2 + b^2 = p and a > b > 0 (Hermite-Serret / Cornacchia).
inline std::pair<Integer, Integer> two_squares(const Integer& p) {
  Integer a = p;
  Integer b = sqrt_minus_one(p);
  if (b > p / 2) b = p - b;
  const Integer bound = boost::multiprecision::sqrt(p);
  while (b > bound) {
    const Integer r = a % b;
    a = b;
    b = r;
  }
  const Integer c = boost::multiprecision::sqrt(p - b * b);
  if (b * b + c * c != p) throw std::logic_error("two_squares: no representation for " + p.str());
  return c > b ? std::pair{c, b} : std::pair{b, c};
}

}  // namespace detail

/// The primary generator of one of the two primes of Z[i] above p = 1 mod 4.
/// Of the two primary primes of norm p (which are conjugate) the one with
/// positive imaginary part is returned, e.g. 5 -> -1+2i, 13 -> 3+2i.
inline GaussInt primary_generator(const Integer& p) {
  if (p % 4 != 1 || !is_prime(p)) {
    throw std::invalid_argument("primary_generator: " + p.str() + " is not a prime = 1 mod 4");
  }
  const auto [a, b] = detail::two_squares(p);
  for (const GaussInt& base : {GaussInt{a, b}, GaussInt{a, -b}}) {
    for (const GaussInt& x : associates(base)) {
      if (x.im > 0 && is_primary(x)) return x;
    }
  }
  throw std::logic_error("primary_generator: no primary associate for " + p.str());
}

enum class PlaceKind { Inert, Split };

/// A place of Q(i) above an odd prime ell, identified by a generator of its
/// prime ideal: ell itself when inert, a prime of norm ell when split.
struct GaussPlace {
  PlaceKind kind;
  Integer ell;
  GaussInt generator;

  /// Residue degree over Q.
  unsigned residue_degree() const { return kind == PlaceKind::Inert ? 2 : 1; }

  friend bool operator==(const GaussPlace&, const GaussPlace&) = default;
};

/// Places of Q(i) above the odd prime ell. Split generators are a+bi and
/// a-bi with a > b > 0, so 5 gives (2+i), (2-i).
inline std::vector<GaussPlace> places_above(const Integer& ell) {
  if (ell == 2) throw std::invalid_argument("places_above: 2 ramifies in Q(i) and is not supported");
  if (!is_prime(ell)) throw std::invalid_argument("places_above: " + ell.str() + " is not prime");
  if (ell % 4 == 3) return {GaussPlace{PlaceKind::Inert, ell, GaussInt{ell, 0}}};
  const auto [a, b] = detail::two_squares(ell);
  return {GaussPlace{PlaceKind::Split, ell, GaussInt{a, b}},
          GaussPlace{PlaceKind::Split, ell, GaussInt{a, -b}}};
}

/// Normalised valuation of x != 0 at the place v.
inline unsigned gauss_val(GaussInt x, const GaussPlace& v) {
  if (x.is_zero()) throw std::invalid_argument("gauss_val: zero has infinite valuation");
  unsigned k = 0;
  if (v.kind == PlaceKind::Inert) {
    while (x.re % v.ell == 0 && x.im % v.ell == 0) {
      x.re /= v.ell;
      x.im /= v.ell;
      ++k;
    }
    return k;
  }
  const GaussInt c = conj(v.generator);
  for (;;) {
    GaussInt t = x * c;
    if (t.re % v.ell != 0 || t.im % v.ell != 0) return k;
    x = GaussInt{t.re / v.ell, t.im / v.ell};
    ++k;
  }
}

}  // namespace oddbrauer
