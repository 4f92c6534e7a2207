#pragma once

// Number field and surface description for X: ax^4 + by^4 + cz^4 + dw^4 = 0.
// Q, Q(i) and quadratic fields Q(sqrt d) with rational coefficients derive
// their place data automatically; any other field enters as an abstract
// degree with user-supplied places and Galois exponent N.

#include "oddbrauer/arith.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oddbrauer {

using Coefficients = std::array<Rational, 4>;

enum class FieldKind { Rationals, GaussianRationals, Quadratic, Abstract };

struct FieldDesc {
  FieldKind kind = FieldKind::Rationals;
  Integer d = 0;        // Quadratic only
  unsigned degree_ = 1;  // Abstract only

  static FieldDesc rationals() { return {}; }
  static FieldDesc gaussian() { return {FieldKind::GaussianRationals, -1, 2}; }
  static FieldDesc quadratic(Integer d) { return {FieldKind::Quadratic, std::move(d), 2}; }
  static FieldDesc abstract(unsigned degree) { return {FieldKind::Abstract, 0, degree}; }

  unsigned degree() const { return kind == FieldKind::Rationals ? 1 : degree_; }
  bool is_literal() const { return kind != FieldKind::Abstract; }

  /// The d of Q(sqrt d) for the two quadratic kinds.
  Integer quadratic_d() const { return kind == FieldKind::GaussianRationals ? Integer(-1) : d; }

  std::string name() const {
    switch (kind) {
      case FieldKind::Rationals: return "Q";
      case FieldKind::GaussianRationals: return "Q(i)";
      case FieldKind::Quadratic: return "Q(sqrt(" + d.str() + "))";
      case FieldKind::Abstract: return "abstract field of degree " + std::to_string(degree_);
    }
    return "?";
  }

  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

/// One place v of F above the rational prime p.
struct PlaceData {
  Integer p;
  unsigned e = 1;
  unsigned f = 1;
  std::array<int, 4> vals{0, 0, 0, 0};

  int val_sum() const { return vals[0] + vals[1] + vals[2] + vals[3]; }

  friend bool operator==(const PlaceData&, const PlaceData&) = default;
};

/// Schema or invariant violation in a surface description; the message
/// starts with the offending field path.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what) {}
};

/// Raised when place data above a prime is needed but was not supplied.
class MissingPlaces : public std::runtime_error {
 public:
  explicit MissingPlaces(const Integer& p)
      : std::runtime_error("no place data above " + p.str() + " (abstract fields must list it)"), p_(p) {}
  const Integer& prime() const noexcept { return p_; }

 private:
  Integer p_;
};

/// e = f = 1 and val = val_p(coefficient) at each listed prime.
inline std::vector<PlaceData> places_for_Q(const Coefficients& coeffs, const std::vector<Integer>& primes) {
  std::vector<PlaceData> out;
  for (const auto& p : primes) {
    PlaceData v{p, 1, 1, {}};
    for (std::size_t k = 0; k < 4; ++k) v.vals[k] = val_p(coeffs[k], p);
    out.push_back(v);
  }
  return out;
}

/// Places of Q(sqrt d) above odd primes, classified by the Kronecker symbol
/// (d | p): ramified (e = 2, valuations doubled), split (two places) or
/// inert (f = 2).
inline std::vector<PlaceData> places_for_quadratic(const Integer& d, const Coefficients& coeffs,
                                                   const std::vector<Integer>& primes) {
  if (d == 0 || d == 1 || !is_squarefree(d)) {
    throw std::invalid_argument("places_for_quadratic: d = " + d.str() + " is not a squarefree integer != 0, 1");
  }
  std::vector<PlaceData> out;
  for (const auto& p : primes) {
    if (p == 2 || !is_prime(p)) throw std::invalid_argument("places_for_quadratic: " + p.str() + " is not an odd prime");
    std::array<int, 4> vals{};
    for (std::size_t k = 0; k < 4; ++k) vals[k] = val_p(coeffs[k], p);
    const int symbol = jacobi(d, p);
    if (symbol == 0) {
      for (auto& x : vals) x *= 2;
      out.push_back(PlaceData{p, 2, 1, vals});
    } else if (symbol == 1) {
      out.push_back(PlaceData{p, 1, 1, vals});
      out.push_back(PlaceData{p, 1, 1, vals});
    } else {
      out.push_back(PlaceData{p, 1, 2, vals});
    }
  }
  return out;
}

inline Rational coefficient_product(const Coefficients& c) { return c[0] * c[1] * c[2] * c[3]; }

/// Order of r = abcd in Q(i)^* / (Q(i)^*)^4 for rational r. Rational squares
/// of Q(i) are +-t^2 and rational fourth powers are t^4 and -4t^4.
inline unsigned galois_exponent_Q(const Coefficients& coeffs) {
  const Rational r = coefficient_product(coeffs);
  if (r == 0) throw std::invalid_argument("galois_exponent_Q: zero coefficient");
  if (is_rational_fourth_power(r) || is_rational_fourth_power(r / -4)) return 1;
  if (is_rational_square(r) || is_rational_square(-r)) return 2;
  return 4;
}

/// Exponent of Gal(F(i, (abcd)^(1/4)) / Q(i)) for F = Q(sqrt d) and rational
/// coefficients. The extension is Kummer over Q(i), generated by d^2 and abcd
/// modulo fourth powers; d^2 is a fourth power exactly when d = -1.
inline unsigned galois_exponent_quadratic(const Integer& d, const Coefficients& coeffs) {
  const unsigned r_order = galois_exponent_Q(coeffs);
  const unsigned d_order = d == -1 ? 1 : 2;
  return std::max(r_order, d_order);
}

struct SurfaceSpec {
  FieldDesc field;
  std::optional<Coefficients> coefficients;
  unsigned long long N = 0;
  /// Explicit places; for literal fields these agree with auto-derivation.
  std::vector<PlaceData> places;
  std::vector<Integer> probes;
  std::optional<std::uint64_t> search_bound;

  /// Every place of F above the odd prime p.
  std::vector<PlaceData> places_above(const Integer& p) const {
    if (field.is_literal()) {
      const Coefficients& c = *coefficients;
      if (field.kind == FieldKind::Rationals) return places_for_Q(c, {p});
      return places_for_quadratic(field.quadratic_d(), c, {p});
    }
    std::vector<PlaceData> out;
    for (const auto& v : places) {
      if (v.p == p) out.push_back(v);
    }
    if (out.empty()) throw MissingPlaces(p);
    return out;
  }

  /// Odd primes at which some coefficient may have nonzero valuation,
  /// ascending. For abstract fields: primes of listed places with a nonzero
  /// valuation.
  std::vector<Integer> support_primes() const {
    std::set<Integer> out;
    if (field.is_literal()) {
      for (const auto& c : *coefficients) {
        for (const Integer& part : {boost::multiprecision::numerator(c), boost::multiprecision::denominator(c)}) {
          for (const auto& q : factor(part).primes()) {
            if (q != 2) out.insert(q);
          }
        }
      }
    } else {
      for (const auto& v : places) {
        if (v.p != 2 && v.vals != std::array<int, 4>{0, 0, 0, 0}) out.insert(v.p);
      }
    }
    return {out.begin(), out.end()};
  }

  /// Odd primes that have explicit place data.
  std::vector<Integer> listed_primes() const {
    std::set<Integer> out;
    for (const auto& v : places) {
      if (v.p != 2) out.insert(v.p);
    }
    return {out.begin(), out.end()};
  }
};

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline Integer json_integer(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw SpecError(path, "expected an integer");
}

inline Rational json_rational(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Rational(json_integer(j, path));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw SpecError(path, e.what());
    }
  }
  throw SpecError(path, "expected an integer or a \"num/den\" string");
}

inline unsigned long long json_positive(const nlohmann::json& j, const std::string& path) {
  const Integer v = json_integer(j, path);
  if (v < 1 || v > Integer(std::numeric_limits<unsigned long long>::max())) {
    throw SpecError(path, "expected a positive integer");
  }
  return static_cast<unsigned long long>(v);
}

inline nlohmann::json rational_json(const Rational& q) {
  const Integer& num = boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) == 1 && boost::multiprecision::abs(num) < Integer(1LL << 53)) {
    return static_cast<long long>(num);
  }
  return to_string(q);
}

inline nlohmann::json integer_json(const Integer& n) {
  if (boost::multiprecision::abs(n) < Integer(1LL << 53)) return static_cast<long long>(n);
  return n.str();
}

}  // namespace detail

/// Validates and normalises a surface description. Schema:
///   field:        "Q" | "Q(i)" | {"quadratic": d} | {"abstract": {"degree": n}}
///   coefficients: [a, b, c, d], integers or "num/den" strings
///   N:            positive integer (required for abstract fields)
///   places:       [{p, e, f, vals: [va, vb, vc, vd]}, ...]
///   probes:       [p, ...], primes = 1 mod 4
///   search_bound: integer >= 13
inline SurfaceSpec parse_spec(const nlohmann::json& j) {
  using detail::json_integer;
  if (!j.is_object()) throw SpecError("", "top level must be an object");
  static const std::set<std::string> known{"field", "coefficients", "N", "places", "probes", "search_bound"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw SpecError(key, "unknown key");
  }

  SurfaceSpec spec;
  if (!j.contains("field")) throw SpecError("field", "missing");
  const auto& fj = j.at("field");
  if (fj.is_string()) {
    const auto s = fj.get<std::string>();
    if (s == "Q") {
      spec.field = FieldDesc::rationals();
    } else if (s == "Q(i)") {
      spec.field = FieldDesc::gaussian();
    } else {
      throw SpecError("field", "unknown field \"" + s + "\"");
    }
  } else if (fj.is_object() && fj.size() == 1 && fj.contains("quadratic")) {
    const Integer d = json_integer(fj.at("quadratic"), "field.quadratic");
    if (d == 0 || d == 1 || !is_squarefree(d)) throw SpecError("field.quadratic", "d must be squarefree and != 0, 1");
    spec.field = d == -1 ? FieldDesc::gaussian() : FieldDesc::quadratic(d);
  } else if (fj.is_object() && fj.size() == 1 && fj.contains("abstract")) {
    const auto& aj = fj.at("abstract");
    if (!aj.is_object() || !aj.contains("degree")) throw SpecError("field.abstract.degree", "missing");
    const auto n = detail::json_positive(aj.at("degree"), "field.abstract.degree");
    if (n > 1'000'000) throw SpecError("field.abstract.degree", "degree out of range");
    spec.field = FieldDesc::abstract(static_cast<unsigned>(n));
  } else {
    throw SpecError("field", "expected \"Q\", \"Q(i)\", {\"quadratic\": d} or {\"abstract\": {\"degree\": n}}");
  }

  if (j.contains("coefficients")) {
    const auto& cj = j.at("coefficients");
    if (!cj.is_array() || cj.size() != 4) throw SpecError("coefficients", "expected an array of four rationals");
    Coefficients c;
    for (std::size_t k = 0; k < 4; ++k) {
      const std::string path = "coefficients[" + std::to_string(k) + "]";
      c[k] = detail::json_rational(cj[k], path);
      if (c[k] == 0) throw SpecError(path, "zero coefficient");
    }
    spec.coefficients = c;
  } else if (spec.field.is_literal()) {
    throw SpecError("coefficients", "required for " + spec.field.name());
  }

  if (j.contains("places")) {
    const auto& pj = j.at("places");
    if (!pj.is_array()) throw SpecError("places", "expected an array");
    for (std::size_t k = 0; k < pj.size(); ++k) {
      const std::string path = "places[" + std::to_string(k) + "]";
      const auto& vj = pj[k];
      if (!vj.is_object()) throw SpecError(path, "expected an object");
      for (const char* key : {"p", "e", "f", "vals"}) {
        if (!vj.contains(key)) throw SpecError(path + "." + key, "missing");
      }
      PlaceData v;
      v.p = json_integer(vj.at("p"), path + ".p");
      if (!is_prime(v.p)) throw SpecError(path + ".p", v.p.str() + " is not prime");
      const Integer e = json_integer(vj.at("e"), path + ".e");
      const Integer f = json_integer(vj.at("f"), path + ".f");
      if (e < 1 || e > 1'000'000) throw SpecError(path + ".e", "ramification index must be >= 1");
      if (f < 1 || f > 1'000'000) throw SpecError(path + ".f", "residue degree must be >= 1");
      v.e = static_cast<unsigned>(e);
      v.f = static_cast<unsigned>(f);
      const auto& valsj = vj.at("vals");
      if (!valsj.is_array() || valsj.size() != 4) throw SpecError(path + ".vals", "expected four integers");
      for (std::size_t i = 0; i < 4; ++i) {
        const Integer x = json_integer(valsj[i], path + ".vals[" + std::to_string(i) + "]");
        if (boost::multiprecision::abs(x) > 1'000'000'000) {
          throw SpecError(path + ".vals[" + std::to_string(i) + "]", "valuation out of range");
        }
        v.vals[i] = static_cast<int>(x);
      }
      spec.places.push_back(v);
    }
  }

  if (j.contains("probes")) {
    const auto& pj = j.at("probes");
    if (!pj.is_array() || pj.empty()) throw SpecError("probes", "expected a non-empty array");
    for (std::size_t k = 0; k < pj.size(); ++k) {
      const std::string path = "probes[" + std::to_string(k) + "]";
      const Integer p = json_integer(pj[k], path);
      if (p % 4 != 1 || !is_prime(p)) throw SpecError(path, p.str() + " is not a prime = 1 mod 4");
      spec.probes.push_back(p);
    }
  }
  if (j.contains("search_bound")) {
    const auto b = detail::json_positive(j.at("search_bound"), "search_bound");
    if (b < 13) throw SpecError("search_bound", "must be at least 13");
    spec.search_bound = b;
  }

  std::optional<unsigned long long> user_n;
  if (j.contains("N")) user_n = detail::json_positive(j.at("N"), "N");

  if (spec.field.is_literal()) {
    const Coefficients& c = *spec.coefficients;
    const unsigned derived = spec.field.kind == FieldKind::Quadratic
                                 ? galois_exponent_quadratic(spec.field.d, c)
                                 : galois_exponent_Q(c);
    if (user_n && *user_n % derived != 0) {
      throw SpecError("N", "must be a multiple of the Galois exponent " + std::to_string(derived));
    }
    spec.N = user_n.value_or(derived);

    // Supplied places must agree with the derived ones; the stored list is
    // the derivation over the supplied primes and the coefficient support.
    std::set<Integer> primes;
    for (const auto& v : spec.places) {
      if (v.p == 2) throw SpecError("places", "places above 2 are not used for literal fields");
      primes.insert(v.p);
    }
    for (const auto& p : primes) {
      std::vector<PlaceData> given;
      for (const auto& v : spec.places) {
        if (v.p == p) given.push_back(v);
      }
      if (given != spec.places_above(p)) {
        throw SpecError("places", "data above " + p.str() + " disagrees with the derived places of " + spec.field.name());
      }
    }
    for (const auto& p : spec.support_primes()) primes.insert(p);
    spec.places.clear();
    for (const auto& p : primes) {
      for (auto& v : spec.places_above(p)) spec.places.push_back(std::move(v));
    }
  } else {
    if (!user_n) throw SpecError("N", "N required for abstract fields");
    spec.N = *user_n;
    std::map<Integer, unsigned> local_degree;
    for (const auto& v : spec.places) local_degree[v.p] += v.e * v.f;
    for (const auto& [p, total] : local_degree) {
      if (total != spec.field.degree()) {
        throw SpecError("places", "sum of e*f above " + p.str() + " is " + std::to_string(total) +
                                      ", expected the field degree " + std::to_string(spec.field.degree()));
      }
    }
  }
  return spec;
}

inline SurfaceSpec parse_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError("", std::string("malformed input: ") + e.what());
  }
  return parse_spec(j);
}

inline SurfaceSpec parse_spec(const char* text) { return parse_spec(std::string(text)); }

/// Structured form accepted back by parse_spec.
inline nlohmann::json to_json(const SurfaceSpec& spec) {
  nlohmann::json j;
  switch (spec.field.kind) {
    case FieldKind::Rationals: j["field"] = "Q"; break;
    case FieldKind::GaussianRationals: j["field"] = "Q(i)"; break;
    case FieldKind::Quadratic: j["field"] = {{"quadratic", detail::integer_json(spec.field.d)}}; break;
    case FieldKind::Abstract: j["field"] = {{"abstract", {{"degree", spec.field.degree()}}}}; break;
  }
  if (spec.coefficients) {
    j["coefficients"] = nlohmann::json::array();
    for (const auto& c : *spec.coefficients) j["coefficients"].push_back(detail::rational_json(c));
  }
  j["N"] = spec.N;
  j["places"] = nlohmann::json::array();
  for (const auto& v : spec.places) {
    j["places"].push_back({{"p", detail::integer_json(v.p)},
                           {"e", v.e},
                           {"f", v.f},
                           {"vals", {v.vals[0], v.vals[1], v.vals[2], v.vals[3]}}});
  }
  if (!spec.probes.empty()) {
    j["probes"] = nlohmann::json::array();
    for (const auto& p : spec.probes) j["probes"].push_back(detail::integer_json(p));
  }
  if (spec.search_bound) j["search_bound"] = *spec.search_bound;
  return j;
}

inline bool operator==(const SurfaceSpec& a, const SurfaceSpec& b) {
  return a.field == b.field && a.coefficients == b.coefficients && a.N == b.N && a.places == b.places &&
         a.probes == b.probes && a.search_bound == b.search_bound;
}

}  // namespace oddbrauer
