#pragma once

// Exact Laurent series in two variables x = z^(1,0), y = z^(0,1), truncated
// by total degree delta(m) = m1 + m2.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "thetaforge/errors.hpp"

namespace thetaforge {

using Integer = mpz_class;

/// A lattice point m in M = Z^2. Also used for rational directions in M_R.
struct Exponent {
  std::int64_t m1 = 0;
  std::int64_t m2 = 0;

  constexpr std::int64_t degree() const { return m1 + m2; }
  constexpr bool is_zero() const { return m1 == 0 && m2 == 0; }

  friend constexpr bool operator==(const Exponent&, const Exponent&) = default;
  friend constexpr Exponent operator+(Exponent a, Exponent b) {
    return {a.m1 + b.m1, a.m2 + b.m2};
  }
  friend constexpr Exponent operator-(Exponent a, Exponent b) {
    return {a.m1 - b.m1, a.m2 - b.m2};
  }
  friend constexpr Exponent operator-(Exponent a) { return {-a.m1, -a.m2}; }
  friend constexpr Exponent operator*(std::int64_t k, Exponent a) {
    return {k * a.m1, k * a.m2};
  }
};

/// The skew form omega((a,b),(c,d)) = ad - bc.
constexpr std::int64_t omega(Exponent a, Exponent b) { return a.m1 * b.m2 - a.m2 * b.m1; }

/// True iff m lies in the monoid P = N(1,0) + N(0,1).
constexpr bool in_monoid(Exponent m) { return m.m1 >= 0 && m.m2 >= 0; }

std::int64_t gcd_of(Exponent m);
/// m divided by the gcd of its entries. Requires m != 0.
Exponent primitive(Exponent m);

std::string to_string(Exponent m);

/// Graded order: by total degree, then by m1. This is the iteration order
/// of every series and the tie-break used by theta-basis expansion.
struct GradedOrder {
  constexpr bool operator()(const Exponent& a, const Exponent& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.m1 < b.m1;
  }
};

class Series {
 public:
  using TermMap = std::map<Exponent, Integer, GradedOrder>;

  /// Cutoff used for exact Laurent polynomials (cluster variables).
  static constexpr std::int64_t kUnbounded = std::int64_t{1} << 40;

  /// The zero series known up to `cutoff`.
  explicit Series(std::int64_t cutoff = kUnbounded);

  /// c * z^p. Throws CutoffError if delta(p) > cutoff.
  static Series monomial(Exponent p, std::int64_t cutoff, const Integer& c = 1);
  static Series constant(const Integer& c, std::int64_t cutoff);

  std::int64_t cutoff() const { return cutoff_; }
  bool exact() const { return cutoff_ >= kUnbounded; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// The coefficient c_m. Throws CutoffError when delta(m) exceeds the cutoff.
  Integer coefficient(Exponent m) const;

  /// Smallest stored degree; cutoff + 1 for the zero series.
  std::int64_t valuation() const;

  /// First term in graded order, if any.
  std::optional<std::pair<Exponent, Integer>> leading_term() const;

  Series truncated(std::int64_t cutoff) const;

  /// Adds c to the coefficient of z^m. Terms beyond the cutoff are dropped.
  void add_term(Exponent m, const Integer& c);

  bool nonnegative() const;
  /// First negative coefficient in graded order.
  std::optional<std::pair<Exponent, Integer>> first_negative() const;

  /// z^shift * f.
  Series shifted(Exponent shift) const;

  Series& operator+=(const Series& g);
  Series& operator-=(const Series& g);
  Series& operator*=(const Integer& k);
  Series operator-() const;

  friend Series operator+(Series f, const Series& g) { return f += g; }
  friend Series operator-(Series f, const Series& g) { return f -= g; }
  friend Series operator*(Series f, const Integer& k) { return f *= k; }
  friend Series operator*(const Integer& k, Series f) { return f *= k; }
  friend Series operator*(const Series& f, const Series& g);

  /// Equality after cutoff alignment: compares terms of degree at most
  /// min(cutoff(f), cutoff(g)).
  friend bool operator==(const Series& f, const Series& g);

  /// Same cutoff and same terms.
  bool identical(const Series& g) const { return cutoff_ == g.cutoff_ && terms_ == g.terms_; }

  std::string to_string() const;

 private:
  TermMap terms_;
  std::int64_t cutoff_;
};

/// f^e for a unit f = 1 + t with every term of t of degree >= 1. Negative
/// exponents expand the geometric series up to the cutoff. Throws
/// NonInvertibleError when f is not of that form.
Series power(const Series& f, std::int64_t e);

/// Exact quotient of Laurent polynomials. Throws DivisionError when the
/// division leaves a remainder.
Series divide_exact(const Series& num, const Series& den);

/// Addition on cutoffs that saturates at Series::kUnbounded.
std::int64_t cutoff_add(std::int64_t a, std::int64_t b);

}  // namespace thetaforge

template <>
struct std::hash<thetaforge::Exponent> {
  std::size_t operator()(const thetaforge::Exponent& m) const noexcept {
    return std::hash<std::int64_t>{}(m.m1 * 1000003 + m.m2);
  }
};
