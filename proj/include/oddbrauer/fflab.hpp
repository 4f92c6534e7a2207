#pragma once

// Finite computations behind the local results: the supersingular curve
// A: y^2 + y = x^3 + x^2 + x + 1 over binary fields, the cohomology of a
// cyclic group acting on Z[i]/p^m, and the numeric thresholds of the
// Hasse-Weil and Swan-conductor arguments.

#include "oddbrauer/arith.hpp"
#include "oddbrauer/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace oddbrauer {

// ---------------------------------------------------------------------------
// Binary fields

/// GF(2^n) in the polynomial basis modulo the lexicographically least
/// irreducible polynomial of degree n. Elements are bit masks of length n.
class BinaryField {
 public:
  using Element = std::uint32_t;

  static constexpr unsigned kMaxDegree = 24;

  explicit BinaryField(unsigned n) : n_(n), modulus_(least_irreducible(n)) {}

  BinaryField(unsigned n, std::uint32_t modulus) : n_(n), modulus_(modulus) {
    if (n == 0 || n > kMaxDegree) throw std::invalid_argument("BinaryField: degree out of range");
    if (degree(modulus) != static_cast<int>(n) || !is_irreducible(modulus)) {
      throw std::invalid_argument("BinaryField: modulus is not an irreducible polynomial of degree n");
    }
  }

  unsigned degree() const { return n_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  static Element add(Element a, Element b) { return a ^ b; }

  Element mul(Element a, Element b) const {
    std::uint64_t prod = 0;
    for (unsigned k = 0; k < n_; ++k) {
      if ((b >> k) & 1U) prod ^= std::uint64_t{a} << k;
    }
    for (int k = 2 * static_cast<int>(n_) - 2; k >= static_cast<int>(n_); --k) {
      if ((prod >> k) & 1U) prod ^= std::uint64_t{modulus_} << (k - static_cast<int>(n_));
    }
    return static_cast<Element>(prod);
  }

  Element sqr(Element a) const { return mul(a, a); }

  Element pow(Element a, std::uint64_t e) const {
    Element r = 1;
    while (e != 0) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1U;
    }
    return r;
  }

  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("BinaryField: inverse of zero");
    return pow(a, size() - 2);
  }

  /// Polynomial-basis coordinates; bit k is the coefficient of t^k.
  static int degree(std::uint64_t poly) {
    int d = -1;
    while (poly != 0) {
      poly >>= 1U;
      ++d;
    }
    return d;
  }

  /// Exhaustive trial division by every polynomial of degree <= deg/2.
  static bool is_irreducible(std::uint32_t poly) {
    const int d = degree(poly);
    if (d < 1) return false;
    for (std::uint32_t q = 2; degree(q) <= d / 2; ++q) {
      if (poly_mod(poly, q) == 0) return false;
    }
    return true;
  }

  static std::uint32_t least_irreducible(unsigned n) {
    if (n == 0 || n > kMaxDegree) throw std::invalid_argument("BinaryField: degree out of range");
    for (std::uint32_t poly = 1U << n;; ++poly) {
      if (is_irreducible(poly)) return poly;
    }
  }

 private:
  static std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
    const int db = degree(b);
    for (int da = degree(a); da >= db; da = degree(a)) a ^= b << (da - db);
    return a;
  }

  unsigned n_;
  std::uint32_t modulus_;
};

// ---------------------------------------------------------------------------
// Weierstrass curves over binary fields

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with coefficients in F_2.
struct CurveCoefficients {
  std::array<unsigned, 5> a{0, 1, 1, 1, 1};  // a1, a2, a3, a4, a6

  /// A: y^2 + y = x^3 + x^2 + x + 1.
  static CurveCoefficients supersingular_A() { return {}; }

  friend bool operator==(const CurveCoefficients&, const CurveCoefficients&) = default;
};

struct CurvePoint {
  bool infinity = true;
  BinaryField::Element x = 0;
  BinaryField::Element y = 0;

  static CurvePoint at_infinity() { return {}; }
  static CurvePoint affine(BinaryField::Element x, BinaryField::Element y) { return {false, x, y}; }

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

class BinaryCurve {
 public:
  using Element = BinaryField::Element;

  BinaryCurve(BinaryField field, CurveCoefficients coeffs) : field_(std::move(field)), c_(coeffs) {
    for (unsigned v : c_.a) {
      if (v > 1) throw std::invalid_argument("BinaryCurve: coefficients must lie in F_2");
    }
  }

  const BinaryField& field() const { return field_; }

  bool contains(const CurvePoint& p) const {
    if (p.infinity) return true;
    const auto& F = field_;
    const Element lhs = F.sqr(p.y) ^ (a(0) ? F.mul(p.x, p.y) : 0) ^ (a(2) ? p.y : 0);
    return lhs == rhs(p.x);
  }

  CurvePoint neg(const CurvePoint& p) const {
    if (p.infinity) return p;
    return CurvePoint::affine(p.x, p.y ^ (a(0) ? p.x : 0) ^ (a(2) ? 1U : 0U));
  }

  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    const auto& F = field_;
    Element lambda = 0;
    Element nu = 0;
    if (p.x != q.x) {
      const Element den = F.inv(p.x ^ q.x);
      lambda = F.mul(p.y ^ q.y, den);
      nu = F.mul(F.mul(p.y, q.x) ^ F.mul(q.y, p.x), den);
    } else {
      if (q == neg(p)) return CurvePoint::at_infinity();
      // p == q; the tangent denominator 2y + a1 x + a3 reduces to a1 x + a3.
      const Element den = (a(0) ? p.x : 0) ^ (a(2) ? 1U : 0U);
      if (den == 0) return CurvePoint::at_infinity();
      const Element den_inv = F.inv(den);
      const Element x2 = F.sqr(p.x);
      lambda = F.mul(x2 ^ (a(3) ? 1U : 0U) ^ (a(0) ? p.y : 0), den_inv);
      nu = F.mul(F.mul(x2, p.x) ^ (a(3) ? p.x : 0) ^ (a(2) ? p.y : 0), den_inv);
    }
    const Element x3 = F.sqr(lambda) ^ (a(0) ? lambda : 0) ^ (a(1) ? 1U : 0U) ^ p.x ^ q.x;
    const Element y3 = F.mul(lambda ^ (a(0) ? 1U : 0U), x3) ^ nu ^ (a(2) ? 1U : 0U);
    return CurvePoint::affine(x3, y3);
  }

  CurvePoint mul(std::uint64_t k, CurvePoint p) const {
    CurvePoint r = CurvePoint::at_infinity();
    while (k != 0) {
      if (k & 1U) r = add(r, p);
      p = add(p, p);
      k >>= 1U;
    }
    return r;
  }

  /// All projective points, infinity first, then affine points ordered by
  /// (x, y). With c = a1 x + a3, the fibre over x is y = sqrt(rhs) when
  /// c = 0 and y = c z with z^2 + z = rhs / c^2 otherwise.
  std::vector<CurvePoint> points() const {
    const auto& F = field_;
    const auto q = F.size();
    std::vector<std::array<Element, 2>> artin_schreier(q, {0, 0});
    std::vector<std::uint8_t> roots(q, 0);
    for (Element z = 0; z < q; ++z) {
      const Element w = F.sqr(z) ^ z;
      artin_schreier[w][roots[w]++] = z;
    }
    std::vector<CurvePoint> out{CurvePoint::at_infinity()};
    for (Element x = 0; x < q; ++x) {
      const Element r = rhs(x);
      const Element c = (a(0) ? x : 0) ^ (a(2) ? 1U : 0U);
      std::vector<Element> ys;
      if (c == 0) {
        ys.push_back(F.pow(r, std::uint64_t{1} << (F.degree() - 1)));
      } else {
        const Element w = F.mul(r, F.inv(F.sqr(c)));
        for (std::uint8_t k = 0; k < roots[w]; ++k) ys.push_back(F.mul(c, artin_schreier[w][k]));
      }
      std::sort(ys.begin(), ys.end());
      for (const Element y : ys) out.push_back(CurvePoint::affine(x, y));
    }
    return out;
  }

 private:
  bool a(std::size_t k) const { return c_.a[k] != 0; }

  Element rhs(Element x) const {
    const auto& F = field_;
    const Element x2 = F.sqr(x);
    return F.mul(x2, x) ^ (a(1) ? x2 : 0) ^ (a(3) ? x : 0) ^ (a(4) ? 1U : 0U);
  }

  BinaryField field_;
  CurveCoefficients c_;
};

inline constexpr unsigned kMaxEnumerationDegree = 12;

inline BinaryCurve curve_over(unsigned n, const CurveCoefficients& coeffs) {
  if (n == 0 || n > kMaxEnumerationDegree) {
    throw std::invalid_argument("degree must be in 1.." + std::to_string(kMaxEnumerationDegree));
  }
  return BinaryCurve(BinaryField(n), coeffs);
}

/// Number of projective points over GF(2^n) by enumeration.
inline std::uint64_t count_points(unsigned n, const CurveCoefficients& coeffs = CurveCoefficients::supersingular_A()) {
  return curve_over(n, coeffs).points().size();
}

inline std::uint64_t count_points_A(unsigned n) { return count_points(n); }

/// p-primary part Z/p^k1 x Z/p^k2 (k1 >= k2) of the point group.
struct PPartStructure {
  unsigned k1 = 0;
  unsigned k2 = 0;
  /// Number of points of the p-primary part killed by p.
  std::uint64_t p_torsion = 1;

  friend bool operator==(const PPartStructure& a, const PPartStructure& b) { return a.k1 == b.k1 && a.k2 == b.k2; }
};

/// Invariant factors of the p-primary subgroup, from the group order and
/// the largest order of a p-power element (point groups are generated by at
/// most two elements).
inline PPartStructure group_structure_p_part(unsigned n, std::uint64_t p,
                                             const CurveCoefficients& coeffs = CurveCoefficients::supersingular_A()) {
  if (n % 2 != 0) throw std::invalid_argument("group_structure_p_part: degree must be even");
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("group_structure_p_part: p must be an odd prime");
  const auto curve = curve_over(n, coeffs);
  const auto pts = curve.points();
  const std::uint64_t order = pts.size();
  if (order % p != 0) {
    throw std::invalid_argument("group_structure_p_part: " + std::to_string(p) + " does not divide " +
                                std::to_string(order));
  }
  unsigned total = 0;
  std::uint64_t cofactor = order;
  while (cofactor % p == 0) {
    cofactor /= p;
    ++total;
  }
  PPartStructure out;
  out.p_torsion = 0;
  for (const auto& pt : pts) {
    if (curve.mul(p, pt).infinity) ++out.p_torsion;
    CurvePoint q = curve.mul(cofactor, pt);
    unsigned j = 0;
    while (!q.infinity) {
      q = curve.mul(p, q);
      ++j;
    }
    out.k1 = std::max(out.k1, j);
  }
  out.k2 = total - out.k1;
  return out;
}

struct AutomorphismReport {
  bool on_curve = true;
  bool fixes_infinity = true;
  bool homomorphism = true;
  bool sigma_squared_is_negation = true;
  bool rho_squared_is_negation = true;
  bool anticommute = true;
  std::uint64_t points = 0;

  bool ok() const {
    return on_curve && fixes_infinity && homomorphism && sigma_squared_is_negation && rho_squared_is_negation &&
           anticommute;
  }
};

/// Largest point count for which the homomorphism property is checked on
/// every pair; above it each point is paired with the first 64 points.
inline constexpr std::uint64_t kAllPairsLimit = 1200;

/// Checks sigma: (x, y) -> (x+1, x+y+w) and rho: (x, y) -> (x+w, w^2 x+y),
/// w^2 + w + 1 = 0, on every point over GF(2^n): both preserve the curve,
/// are group automorphisms, sigma^2 = rho^2 = -1 and sigma rho = -rho sigma.
inline AutomorphismReport check_automorphisms(unsigned n,
                                              const CurveCoefficients& coeffs = CurveCoefficients::supersingular_A()) {
  if (n % 2 != 0) throw std::invalid_argument("check_automorphisms: no cube root of unity subfield in GF(2^" +
                                              std::to_string(n) + ")");
  const auto curve = curve_over(n, coeffs);
  const auto& F = curve.field();
  std::optional<BinaryField::Element> omega;
  for (BinaryField::Element w = 2; w < F.size(); ++w) {
    if ((F.sqr(w) ^ w ^ 1U) == 0) {
      omega = w;
      break;
    }
  }
  if (!omega) throw std::logic_error("check_automorphisms: no primitive cube root of unity found");
  const auto w = *omega;
  const auto w2 = F.sqr(w);

  auto sigma = [&](const CurvePoint& p) {
    if (p.infinity) return p;
    return CurvePoint::affine(p.x ^ 1U, p.x ^ p.y ^ w);
  };
  auto rho = [&](const CurvePoint& p) {
    if (p.infinity) return p;
    return CurvePoint::affine(p.x ^ w, F.mul(w2, p.x) ^ p.y);
  };

  const auto pts = curve.points();
  AutomorphismReport r;
  r.points = pts.size();
  r.fixes_infinity = sigma(CurvePoint::at_infinity()).infinity && rho(CurvePoint::at_infinity()).infinity;
  for (const auto& p : pts) {
    r.on_curve = r.on_curve && curve.contains(sigma(p)) && curve.contains(rho(p));
    r.sigma_squared_is_negation = r.sigma_squared_is_negation && sigma(sigma(p)) == curve.neg(p);
    r.rho_squared_is_negation = r.rho_squared_is_negation && rho(rho(p)) == curve.neg(p);
    r.anticommute = r.anticommute && sigma(rho(p)) == curve.neg(rho(sigma(p)));
  }
  const std::size_t partners = pts.size() <= kAllPairsLimit ? pts.size() : std::min<std::size_t>(64, pts.size());
  for (const auto& p : pts) {
    for (std::size_t k = 0; k < partners && r.homomorphism; ++k) {
      const auto& q = pts[k];
      r.homomorphism = sigma(curve.add(p, q)) == curve.add(sigma(p), sigma(q)) &&
                       rho(curve.add(p, q)) == curve.add(rho(p), rho(q));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// H^1 of Z/p^m acting on Z[i]/p^m through multiplication by beta

/// Invariant factors of a finite abelian group with at most two
/// generators, larger first.
struct InvariantPair {
  Integer larger = 1;
  Integer smaller = 1;

  friend bool operator==(const InvariantPair&, const InvariantPair&) = default;
};

using IntMatrix = std::vector<std::vector<Integer>>;

struct SmithForm {
  IntMatrix u;      // rows x rows, unimodular
  IntMatrix u_inv;  // inverse of u
  IntMatrix s;      // diagonal, nonnegative, s[k][k] | s[k+1][k+1]
  IntMatrix v;      // cols x cols, unimodular; u * a * v = s
};

namespace detail {

inline IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t k = 0; k < n; ++k) m[k][k] = 1;
  return m;
}

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), std::vector<Integer>(b.front().size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

}  // namespace detail

/// Smith normal form with transforms, by elementary row and column
/// operations.
inline SmithForm smith_normal_form(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  SmithForm out{detail::identity(rows), detail::identity(rows), {}, detail::identity(cols)};

  // row_i += k * row_j   (u_inv: col_j -= k * col_i)
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t c = 0; c < cols; ++c) a[i][c] += k * a[j][c];
    for (std::size_t c = 0; c < rows; ++c) out.u[i][c] += k * out.u[j][c];
    for (std::size_t r = 0; r < rows; ++r) out.u_inv[r][j] -= k * out.u_inv[r][i];
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(a[i], a[j]);
    std::swap(out.u[i], out.u[j]);
    for (std::size_t r = 0; r < rows; ++r) std::swap(out.u_inv[r][i], out.u_inv[r][j]);
  };
  auto negate_row = [&](std::size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : out.u[i]) x = -x;
    for (std::size_t r = 0; r < rows; ++r) out.u_inv[r][i] = -out.u_inv[r][i];
  };
  auto add_col = [&](std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t r = 0; r < rows; ++r) a[r][i] += k * a[r][j];
    for (std::size_t r = 0; r < cols; ++r) out.v[r][i] += k * out.v[r][j];
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    for (std::size_t r = 0; r < cols; ++r) std::swap(out.v[r][i], out.v[r][j]);
  };

  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the trailing block.
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (!pivot || boost::multiprecision::abs(a[i][j]) <
                                             boost::multiprecision::abs(a[pivot->first][pivot->second]))) {
            pivot = std::pair{i, j};
          }
        }
      }
      if (!pivot) break;
      swap_rows(t, pivot->first);
      swap_cols(t, pivot->second);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const Integer q = a[i][t] / a[t][t];
        if (q != 0) add_row(i, t, -q);
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const Integer q = a[t][j] / a[t][t];
        if (q != 0) add_col(j, t, -q);
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            add_row(t, i, 1);
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (a[t][t] < 0) negate_row(t);
  }
  out.s = std::move(a);
  return out;
}

namespace detail {

struct GaussMod {
  Integer re, im;
};

inline GaussMod gmul(const GaussMod& a, const GaussMod& b, const Integer& mod) {
  Integer re = (a.re * b.re - a.im * b.im) % mod;
  Integer im = (a.re * b.im + a.im * b.re) % mod;
  if (re < 0) re += mod;
  if (im < 0) im += mod;
  return {re, im};
}

inline GaussMod gadd(const GaussMod& a, const GaussMod& b, const Integer& mod) {
  return {(a.re + b.re) % mod, (a.im + b.im) % mod};
}

// (1 + b + ... + b^(count-1), b^count) in Z[i]/mod.
inline std::pair<GaussMod, GaussMod> geometric_sum(const GaussMod& b, const Integer& count, const Integer& mod) {
  if (count == 0) return {{0, 0}, {1 % mod, 0}};
  if (count % 2 == 1) {
    auto [s, pw] = geometric_sum(b, count - 1, mod);
    // S(n+1) = 1 + b S(n)
    GaussMod s1 = gmul(b, s, mod);
    s1.re = (s1.re + 1) % mod;
    return {s1, gmul(pw, b, mod)};
  }
  auto [s, pw] = geometric_sum(b, count / 2, mod);
  // S(2n) = S(n) (1 + b^n)
  GaussMod one_plus{(pw.re + 1) % mod, pw.im};
  return {gmul(s, one_plus, mod), gmul(pw, pw, mod)};
}

inline GaussMod reduce(const GaussInt& x, const Integer& mod) {
  Integer re = x.re % mod;
  Integer im = x.im % mod;
  if (re < 0) re += mod;
  if (im < 0) im += mod;
  return {re, im};
}

inline IntMatrix mult_matrix(const GaussMod& g) { return {{g.re, -g.im}, {g.im, g.re}}; }

struct H1Setup {
  Integer mod;
  GaussMod norm_elem;
  GaussMod diff_elem;
};

inline H1Setup h1_setup(std::uint64_t p, unsigned m, const GaussInt& beta) {
  if (p % 4 != 3 || !is_prime(p)) throw std::invalid_argument("h1_cyclic_module: p must be a prime = 3 mod 4");
  if (m == 0) throw std::invalid_argument("h1_cyclic_module: m must be positive");
  const GaussInt d = beta - GaussInt{1, 0};
  if (!d.is_zero() && (d.re % p != 0 || d.im % p != 0)) {
    throw std::invalid_argument("h1_cyclic_module: val_p(beta - 1) = 0");
  }
  const Integer mod = boost::multiprecision::pow(Integer(p), m);
  const GaussMod b = reduce(beta, mod);
  return {mod, geometric_sum(b, mod, mod).first, reduce(d, mod)};
}

}  // namespace detail

/// val_p(beta - 1) in Z[i] for an inert p; empty when beta = 1.
inline std::optional<unsigned> h1_j(std::uint64_t p, const GaussInt& beta) {
  const GaussInt d = beta - GaussInt{1, 0};
  if (d.is_zero()) return std::nullopt;
  return gauss_val(d, GaussPlace{PlaceKind::Inert, Integer(p), GaussInt{Integer(p), 0}});
}

/// H^1(Z/p^m, Z[i]/p^m) = ker(N) / im(D), N = sum_{k < p^m} beta^k,
/// D = beta - 1, computed on lattices: ker(N) lifts to V diag(c) Z^2 from the
/// Smith form of N, im(D) lifts to the span of D and p^m Z^2, and the
/// quotient's invariants come from the Smith form of the change of basis.
inline InvariantPair h1_cyclic_module(std::uint64_t p, unsigned m, const GaussInt& beta) {
  const auto setup = detail::h1_setup(p, m, beta);
  const Integer& mod = setup.mod;

  const SmithForm sn = smith_normal_form(detail::mult_matrix(setup.norm_elem));
  IntMatrix kernel_basis = sn.v;
  for (std::size_t k = 0; k < 2; ++k) {
    const Integer dk = sn.s[k][k];
    const Integer c = dk == 0 ? Integer(1) : mod / boost::multiprecision::gcd(dk, mod);
    for (std::size_t r = 0; r < 2; ++r) kernel_basis[r][k] *= c;
  }

  IntMatrix gens = detail::mult_matrix(setup.diff_elem);
  for (auto& row : gens) row.resize(4, 0);
  gens[0][2] = mod;
  gens[1][3] = mod;
  const SmithForm sd = smith_normal_form(gens);
  IntMatrix image_basis = sd.u_inv;
  for (std::size_t k = 0; k < 2; ++k) {
    for (std::size_t r = 0; r < 2; ++r) image_basis[r][k] *= sd.s[k][k];
  }

  // X = kernel_basis^{-1} * image_basis, integral since im(D) lies in ker(N).
  const auto& b = kernel_basis;
  const Integer det = b[0][0] * b[1][1] - b[0][1] * b[1][0];
  const IntMatrix adj{{b[1][1], -b[0][1]}, {-b[1][0], b[0][0]}};
  IntMatrix x = detail::matmul(adj, image_basis);
  for (auto& row : x) {
    for (auto& e : row) {
      if (e % det != 0) throw std::logic_error("h1_cyclic_module: image is not contained in the kernel");
      e /= det;
    }
  }
  const Integer g = boost::multiprecision::gcd(boost::multiprecision::gcd(x[0][0], x[0][1]),
                                               boost::multiprecision::gcd(x[1][0], x[1][1]));
  const Integer d2 = boost::multiprecision::abs(x[0][0] * x[1][1] - x[0][1] * x[1][0]) / g;
  return InvariantPair{d2, g};
}

inline constexpr std::uint64_t kMaxH1Enumeration = 1'000'000;

/// The same quotient by listing every element of Z[i]/p^m.
inline InvariantPair h1_cyclic_module_enumerated(std::uint64_t p, unsigned m, const GaussInt& beta) {
  const auto setup = detail::h1_setup(p, m, beta);
  const auto mod = static_cast<std::uint64_t>(setup.mod);
  if (mod * mod > kMaxH1Enumeration) throw std::invalid_argument("h1_cyclic_module_enumerated: p^m too large");
  const auto nr = static_cast<std::uint64_t>(setup.norm_elem.re);
  const auto ni = static_cast<std::uint64_t>(setup.norm_elem.im);
  const auto dr = static_cast<std::uint64_t>(setup.diff_elem.re);
  const auto di = static_cast<std::uint64_t>(setup.diff_elem.im);
  auto index = [mod](std::uint64_t a, std::uint64_t b) { return a * mod + b; };

  std::vector<bool> in_image(mod * mod, false);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> kernel;
  std::uint64_t image_size = 0;
  for (std::uint64_t a = 0; a < mod; ++a) {
    for (std::uint64_t b = 0; b < mod; ++b) {
      const std::uint64_t ir = (dr * a + (mod - di) * b) % mod;
      const std::uint64_t ii = (di * a + dr * b) % mod;
      if (!in_image[index(ir, ii)]) {
        in_image[index(ir, ii)] = true;
        ++image_size;
      }
      const std::uint64_t kr = (nr * a + (mod - ni) * b) % mod;
      const std::uint64_t ki = (ni * a + nr * b) % mod;
      if (kr == 0 && ki == 0) kernel.emplace_back(a, b);
    }
  }
  const std::uint64_t quotient = kernel.size() / image_size;
  std::uint64_t exponent = 1;
  for (const auto& [a, b] : kernel) {
    std::uint64_t order = 1;
    std::uint64_t xa = a, xb = b;
    while (!in_image[index(xa, xb)]) {
      xa = xa * p % mod;
      xb = xb * p % mod;
      order *= p;
    }
    exponent = std::max(exponent, order);
  }
  return InvariantPair{Integer(exponent), Integer(quotient / exponent)};
}

// ---------------------------------------------------------------------------
// Thresholds

namespace detail {

inline bool is_prime_power(const Integer& q) {
  if (q < 2) return false;
  return factor(q).entries.size() == 1;
}

}  // namespace detail

/// sqrt(q) + 1/sqrt(q) > T, evaluated exactly as (q+1)^2 > T^2 q when T > 0.
inline bool sqrt_q_threshold(const Integer& q, const Integer& t) {
  if (t <= 0) return true;
  return (q + 1) * (q + 1) > t * t * q;
}

/// Hasse-Weil condition for a Z/p-torsor over a genus-g curve to have
/// points in every twist: sqrt(q) + 1/sqrt(q) > 2(p(g-1)+1).
inline bool hasse_weil_threshold(const Integer& q, const Integer& p, const Integer& g) {
  if (!detail::is_prime_power(q)) throw std::invalid_argument("hasse_weil_threshold: q must be a prime power");
  if (g < 0) throw std::invalid_argument("hasse_weil_threshold: genus must be nonnegative");
  return sqrt_q_threshold(q, 2 * (p * (g - 1) + 1));
}

/// sqrt(q) + 1/sqrt(q) > 2(2p+1).
inline bool cone_threshold(const Integer& q, const Integer& p) {
  if (!detail::is_prime_power(q)) throw std::invalid_argument("cone_threshold: q must be a prime power");
  return sqrt_q_threshold(q, 2 * (2 * p + 1));
}

/// Swan conductor of a p^t-torsion class on a good-reduction K3 over a
/// field with absolute ramification e: a multiple of p, at most
/// m + te - 1 with m the least integer greater than e/(p-1).
struct SwanBound {
  Integer upper;
  Integer multiple_of;

  std::vector<Integer> admissible() const {
    std::vector<Integer> out;
    for (Integer s = 0; s <= upper; s += multiple_of) out.push_back(s);
    return out;
  }
};

inline SwanBound swan_bound(const Integer& e, const Integer& p, const Integer& t) {
  if (e < 1 || t < 1) throw std::invalid_argument("swan_bound: e and t must be positive");
  if (!is_prime(p)) throw std::invalid_argument("swan_bound: p must be prime");
  const Integer m = e / (p - 1) + 1;
  return SwanBound{m + t * e - 1, p};
}

}  // namespace oddbrauer
