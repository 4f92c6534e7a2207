#pragma once

// 2-adic numbers at finite precision, the Hilbert symbol over Q_2 and an
// exhaustive check that the quaternion algebra ((x+1)(x+16), (u+7)(u-9))
// evaluates trivially at every smooth Q_2-point of
//   z^2 = x(x+1)(x+16) u(u+7)(u-9).

#include "oddbrauer/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace oddbrauer {

/// Thrown when an operation cannot determine a 2-adic value to the three
/// unit bits that square classes need.
class InsufficientPrecision : public std::runtime_error {
 public:
  InsufficientPrecision(int valuation_lower_bound, bool exact)
      : std::runtime_error("insufficient 2-adic precision (valuation " + std::string(exact ? "= " : ">= ") +
                           std::to_string(valuation_lower_bound) + ")"),
        lower_bound_(valuation_lower_bound),
        exact_(exact) {}

  int valuation_lower_bound() const noexcept { return lower_bound_; }
  bool valuation_exact() const noexcept { return exact_; }

 private:
  int lower_bound_;
  bool exact_;
};

/// Element of Q_2^* of squares class (valuation mod 2, unit mod 8).
struct SquareClass {
  unsigned parity = 0;
  unsigned unit = 1;

  bool trivial() const { return parity == 0 && unit == 1; }

  friend SquareClass operator*(SquareClass a, SquareClass b) { return {a.parity ^ b.parity, (a.unit * b.unit) % 8}; }
  friend auto operator<=>(const SquareClass&, const SquareClass&) = default;

  std::string str() const { return "(" + std::to_string(parity) + "," + std::to_string(unit) + ")"; }
};

/// 2^v * u with u odd and known modulo 2^K.
class TwoAdic {
 public:
  static constexpr int kMaxPrecision = 60;

  TwoAdic(int v, std::uint64_t u, int k) : v_(v), k_(std::min(k, kMaxPrecision)) {
    if (k_ < 1) throw InsufficientPrecision(v, true);
    u_ = u & mask(k_);
    if ((u_ & 1U) == 0) throw std::invalid_argument("TwoAdic: unit part must be odd");
  }

  /// Nonzero rational to precision k.
  static TwoAdic from_rational(const Rational& q, int k = kMaxPrecision) {
    if (q == 0) throw std::invalid_argument("TwoAdic: zero has no unit part");
    const int v = val_p(q, Integer(2));
    Integer num = boost::multiprecision::numerator(q);
    Integer den = boost::multiprecision::denominator(q);
    if (v > 0) num >>= v;
    if (v < 0) den >>= -v;
    const int kk = std::min(k, kMaxPrecision);
    const Integer modulus = Integer(1) << kk;
    Integer n = num % modulus;
    if (n < 0) n += modulus;
    const Integer d = den % modulus;
    const std::uint64_t dinv = inverse_odd(static_cast<std::uint64_t>(d), kk);
    return TwoAdic(v, mulmod(static_cast<std::uint64_t>(n), dinv, kk), kk);
  }

  static TwoAdic from_integer(long long n, int k = kMaxPrecision) { return from_rational(Rational(n), k); }

  int valuation() const { return v_; }
  std::uint64_t unit() const { return u_; }
  int precision() const { return k_; }
  /// The value is known modulo 2^absolute_precision().
  int absolute_precision() const { return v_ + k_; }

  SquareClass square_class() const {
    require_precision();
    return {static_cast<unsigned>(v_ & 1), static_cast<unsigned>(u_ & 7U)};
  }

  friend TwoAdic operator*(const TwoAdic& a, const TwoAdic& b) {
    const int k = std::min(a.k_, b.k_);
    return TwoAdic(a.v_ + b.v_, mulmod(a.u_, b.u_, k), k);
  }

  friend TwoAdic operator-(const TwoAdic& a) { return TwoAdic(a.v_, (~a.u_ + 1) & mask(a.k_), a.k_); }

  TwoAdic inverse() const { return TwoAdic(-v_, inverse_odd(u_, k_), k_); }

  /// Sum with precision tracking. Throws InsufficientPrecision when fewer
  /// than three unit bits survive (cancellation between equal-valuation
  /// terms or a sum that vanishes to the known precision).
  friend TwoAdic operator+(const TwoAdic& a, const TwoAdic& b) {
    const int abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
    const int vm = std::min(a.v_, b.v_);
    const int width = std::min(abs_prec - vm, kMaxPrecision);
    auto shifted = [&](const TwoAdic& x) -> std::uint64_t {
      const int s = x.v_ - vm;
      return s >= width ? 0 : (x.u_ << s) & mask(width);
    };
    const std::uint64_t sum = (shifted(a) + shifted(b)) & mask(width);
    if (sum == 0) throw InsufficientPrecision(vm + width, false);
    const int tz = __builtin_ctzll(sum);
    const int k = width - tz;
    if (k < 3) throw InsufficientPrecision(vm + tz, true);
    return TwoAdic(vm + tz, sum >> tz, k);
  }

  friend TwoAdic operator-(const TwoAdic& a, const TwoAdic& b) { return a + (-b); }

 private:
  static std::uint64_t mask(int k) { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; }

  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, int k) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b) & mask(k);
  }

  static std::uint64_t inverse_odd(std::uint64_t a, int k) {
    // Newton iteration: each step doubles the number of correct bits.
    std::uint64_t x = 1;
    for (int bits = 1; bits < 64; bits *= 2) x *= 2 - a * x;
    return x & mask(k);
  }

  void require_precision() const {
    if (k_ < 3) throw InsufficientPrecision(v_, true);
  }

  int v_;
  std::uint64_t u_ = 1;
  int k_;
};

/// A unit of Z_2 is a square iff it is 1 mod 8.
inline bool is_square_2adic(const TwoAdic& x) { return x.square_class().trivial(); }

/// (a, b)_2 = (-1)^(e(u)e(w) + alpha w(w) + beta w(u)) for a = 2^alpha u,
/// b = 2^beta w, with e(u) = (u-1)/2 and w(u) = (u^2-1)/8 mod 2.
inline int hilbert2(const SquareClass& a, const SquareClass& b) {
  auto eps = [](unsigned u) { return ((u - 1) / 2) & 1U; };
  auto omega = [](unsigned u) { return ((u * u - 1) / 8) & 1U; };
  const unsigned e = (eps(a.unit) * eps(b.unit) + a.parity * omega(b.unit) + b.parity * omega(a.unit)) & 1U;
  return e == 0 ? 1 : -1;
}

inline int hilbert2(const TwoAdic& a, const TwoAdic& b) { return hilbert2(a.square_class(), b.square_class()); }

inline int hilbert2(const Rational& a, const Rational& b) {
  return hilbert2(TwoAdic::from_rational(a), TwoAdic::from_rational(b));
}

/// Independent Hilbert symbol: +1 iff z^2 = a x^2 + b y^2 has a primitive
/// solution modulo 2^9. a and b are first scaled by squares to integers of
/// 2-adic valuation 0 or 1; then every primitive solution has a coordinate
/// whose partial derivative has valuation <= 2, and a solution modulo 2^9
/// lifts to Z_2 by Hensel's lemma (2*2 + 1 <= 9). Scaling a solution by a
/// unit makes its odd coordinate 1, so only three slices are searched.
inline int hilbert2_oracle(const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert2_oracle: arguments must be nonzero");
  static constexpr std::int64_t kMod = 512;
  auto normalise = [](const Rational& q) {
    const Integer den = boost::multiprecision::denominator(q);
    Integer n = boost::multiprecision::numerator(q) * den;  // q * den^2
    while (n % 4 == 0) n /= 4;
    Integer r = n % kMod;
    if (r < 0) r += kMod;
    return static_cast<std::int64_t>(r);
  };
  const std::int64_t A = normalise(a);
  const std::int64_t B = normalise(b);
  auto zero = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    return ((A * x % kMod) * x + (B * y % kMod) * y - z * z) % kMod == 0;
  };
  for (std::int64_t s = 0; s < kMod; ++s) {
    for (std::int64_t t = 0; t < kMod; ++t) {
      if (zero(s, t, 1) || zero(1, s, t) || zero(s, 1, t)) return 1;
    }
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Residue classes for the Kummer-surface example

/// A box of Q_2: either 2^valuation (unit + 2^bits Z_2), or the points near
/// a root r of f or g where x - r = 2^k t with k >= cutoff, k of the given
/// parity and t = unit8 mod 8.
struct ResidueClass {
  enum class Kind { Plain, RootAdjacent };
  Kind kind = Kind::Plain;
  int valuation = 0;
  std::uint64_t unit = 1;
  int bits = 0;
  long long root = 0;
  unsigned parity = 0;
  unsigned unit8 = 1;

  std::string str() const {
    if (kind == Kind::Plain) {
      return "2^" + std::to_string(valuation) + "*(" + std::to_string(unit) + " mod 2^" + std::to_string(bits) + ")";
    }
    return std::to_string(root) + " + 2^k*t (k >= cutoff, k = " + std::to_string(parity) + " mod 2, t = " +
           std::to_string(unit8) + " mod 8)";
  }
};

/// Square classes that decide a class: the point condition needs
/// sq(x * f(x)) and the symbol needs sq(f(x)).
struct ClassProfile {
  SquareClass point;
  SquareClass value;

  friend auto operator<=>(const ClassProfile&, const ClassProfile&) = default;
};

struct KummerOptions {
  int precision = 12;
  int cutoff = 8;
};

struct KummerViolation {
  ResidueClass x_class;
  ResidueClass u_class;
  SquareClass f;
  SquareClass g;
};

struct KummerReport {
  KummerOptions options;
  std::uint64_t x_classes = 0;
  std::uint64_t u_classes = 0;
  std::uint64_t refinements = 0;
  /// Pairs of classes lying under Q_2-points of the surface.
  std::uint64_t contributing_pairs = 0;
  std::uint64_t violations = 0;
  std::vector<KummerViolation> violation_examples;
  std::vector<std::string> excluded_points;
  /// Profiles (x side, u side) that occur together on the surface.
  std::set<std::pair<ClassProfile, ClassProfile>> contributing_profiles;
  bool x_shortcut_ok = false;
  bool u_shortcut_ok = false;

  bool ok() const { return violations == 0 && x_shortcut_ok && u_shortcut_ok; }
};

/// One side of the product: the variable's own factor and the two linear
/// factors t + c1, t + c2 of the quadratic.
struct KummerSide {
  std::array<long long, 2> shifts;
  int min_valuation;
  int max_valuation;
};

inline KummerSide kummer_x_side() { return {{1, 16}, -2, 6}; }
inline KummerSide kummer_u_side() { return {{7, -9}, -1, 2}; }

namespace detail {

struct SideTally {
  std::map<ClassProfile, std::pair<std::uint64_t, ResidueClass>> profiles;
  std::uint64_t classes = 0;
  std::uint64_t refinements = 0;
};

inline ClassProfile profile_of(const TwoAdic& t, const TwoAdic& f1, const TwoAdic& f2) {
  const TwoAdic value = f1 * f2;
  return {(t * value).square_class(), value.square_class()};
}

inline void record(SideTally& tally, const ClassProfile& p, const ResidueClass& c) {
  ++tally.classes;
  auto [it, inserted] = tally.profiles.try_emplace(p, 1, c);
  if (!inserted) ++it->second.first;
}

inline SideTally enumerate_side(const KummerSide& side, const KummerOptions& opt) {
  SideTally tally;
  const TwoAdic c1 = TwoAdic::from_integer(side.shifts[0]);
  const TwoAdic c2 = TwoAdic::from_integer(side.shifts[1]);

  struct Box {
    int v;
    std::uint64_t unit;
    int bits;
  };
  for (int v = side.min_valuation; v <= side.max_valuation; ++v) {
    std::vector<Box> stack;
    for (std::uint64_t w = (std::uint64_t{1} << opt.precision) - 1;; w -= 2) {
      stack.push_back({v, w, opt.precision});
      if (w == 1) break;
    }
    while (!stack.empty()) {
      const Box box = stack.back();
      stack.pop_back();
      const TwoAdic t(box.v, box.unit, box.bits);
      std::optional<ClassProfile> prof;
      bool near_root = false;
      try {
        prof = profile_of(t, t + c1, t + c2);
      } catch (const InsufficientPrecision& e) {
        // The whole box lies within 2^cutoff of a root: the root-adjacent
        // classes cover it.
        near_root = e.valuation_lower_bound() >= opt.cutoff;
      }
      if (prof) {
        record(tally, *prof, ResidueClass{ResidueClass::Kind::Plain, box.v, box.unit, box.bits});
        continue;
      }
      if (near_root) continue;
      if (box.bits >= TwoAdic::kMaxPrecision - 1) throw std::logic_error("kummer: refinement did not stabilise");
      ++tally.refinements;
      stack.push_back({box.v, box.unit, box.bits + 1});
      stack.push_back({box.v, box.unit | (std::uint64_t{1} << box.bits), box.bits + 1});
    }
  }

  // Root-adjacent classes: t = r + 2^k s with k >= cutoff. The vanishing
  // factor has square class (k mod 2, s mod 8); the other factors are fixed
  // modulo 2^cutoff.
  for (std::size_t which = 0; which < 2; ++which) {
    const long long root = -side.shifts[which];
    const TwoAdic t_near = TwoAdic::from_integer(root, opt.cutoff - val_p(Integer(root), Integer(2)));
    const TwoAdic other_shift = which == 0 ? c2 : c1;
    const TwoAdic other = t_near + other_shift;
    for (unsigned parity = 0; parity < 2; ++parity) {
      for (unsigned s = 1; s < 8; s += 2) {
        const int k = opt.cutoff + static_cast<int>((parity + 2 - static_cast<unsigned>(opt.cutoff % 2)) % 2);
        const TwoAdic vanishing(k, s, 3);
        const ClassProfile prof = profile_of(t_near, vanishing, other);
        ResidueClass c;
        c.kind = ResidueClass::Kind::RootAdjacent;
        c.root = root;
        c.parity = parity;
        c.unit8 = s;
        record(tally, prof, c);
      }
    }
  }
  return tally;
}

// Checks that f (resp. g) is a square whenever the valuation lies outside
// the enumerated window, over `span` valuations on each side.
inline bool shortcut_holds(const KummerSide& side, const KummerOptions& opt, int span) {
  const TwoAdic c1 = TwoAdic::from_integer(side.shifts[0]);
  const TwoAdic c2 = TwoAdic::from_integer(side.shifts[1]);
  for (int v = side.min_valuation - span; v <= side.max_valuation + span; ++v) {
    if (v >= side.min_valuation && v <= side.max_valuation) continue;
    for (std::uint64_t w = 1; w < (std::uint64_t{1} << opt.precision); w += 2) {
      const TwoAdic t(v, w, opt.precision);
      if (!is_square_2adic((t + c1) * (t + c2))) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Exhaustive verification over residue classes. Valuations of x in -2..6
/// and of u in -1..2 are enumerated with unit parts modulo 2^precision
/// (refined where precision runs out); outside those windows f or g is a
/// square. Neighbourhoods of the roots of f and g are handled by eight
/// symbolic classes each. A pair of classes contributes when
/// x f(x) u g(u) is a square; each contributing pair must have
/// (f(x), g(u))_2 = +1.
inline KummerReport kummer_example_verify(const KummerOptions& opt = {}) {
  if (opt.precision < 12 || opt.precision > 40) throw std::invalid_argument("kummer: precision must be in 12..40");
  if (opt.cutoff < 8 || opt.cutoff > 40) throw std::invalid_argument("kummer: cutoff must be in 8..40");
  KummerReport report;
  report.options = opt;
  report.excluded_points = {"x = -1", "x = -16", "u = -7", "u = 9"};

  const auto xs = detail::enumerate_side(kummer_x_side(), opt);
  const auto us = detail::enumerate_side(kummer_u_side(), opt);
  report.x_classes = xs.classes;
  report.u_classes = us.classes;
  report.refinements = xs.refinements + us.refinements;

  for (const auto& [xp, xinfo] : xs.profiles) {
    for (const auto& [up, uinfo] : us.profiles) {
      if (!(xp.point * up.point).trivial()) continue;
      report.contributing_pairs += xinfo.first * uinfo.first;
      report.contributing_profiles.emplace(xp, up);
      if (hilbert2(xp.value, up.value) != 1) {
        report.violations += xinfo.first * uinfo.first;
        if (report.violation_examples.size() < 16) {
          report.violation_examples.push_back({xinfo.second, uinfo.second, xp.value, up.value});
        }
      }
    }
  }
  report.x_shortcut_ok = detail::shortcut_holds(kummer_x_side(), opt, 8);
  report.u_shortcut_ok = detail::shortcut_holds(kummer_u_side(), opt, 8);
  return report;
}

/// Whether (x0, u0) lies under a Q_2-point with z != 0, and the symbol there.
struct KummerPoint {
  bool on_surface = false;
  int symbol = 1;
};

inline KummerPoint kummer_point(const Rational& x0, const Rational& u0) {
  const Rational f = (x0 + 1) * (x0 + 16);
  const Rational g = (u0 + 7) * (u0 - 9);
  const Rational h = x0 * f * u0 * g;
  if (h == 0) throw std::invalid_argument("kummer_point: point on a branch divisor");
  return {is_square_2adic(TwoAdic::from_rational(h)), hilbert2(f, g)};
}

}  // namespace oddbrauer
