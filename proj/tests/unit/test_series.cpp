#include <doctest.h>

#include <random>

#include "thetaforge/series.hpp"

using namespace thetaforge;

namespace {

const Exponent X{1, 0}, Y{0, 1};

Series poly(std::initializer_list<std::pair<Exponent, long>> terms, std::int64_t cutoff = Series::kUnbounded) {
  Series s(cutoff);
  for (const auto& [m, c] : terms) s.add_term(m, c);
  return s;
}

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  }

  Series series() {
    Series s(uniform(3, 6));
    const auto n = uniform(0, 6);
    for (int i = 0; i < n; ++i) s.add_term({uniform(-2, 3), uniform(-2, 3)}, uniform(-5, 5));
    return s;
  }

  /// 1 + t with every term of t of positive degree.
  Series unit() {
    Series s = Series::constant(1, uniform(3, 7));
    const auto n = uniform(1, 4);
    for (int i = 0; i < n; ++i) {
      const Exponent m{uniform(-1, 3), uniform(-1, 3)};
      if (m.degree() >= 1) s.add_term(m, uniform(-3, 3));
    }
    return s;
  }
};

}  // namespace

TEST_CASE("monomial") {
  CHECK(Series::monomial({0, 0}, 8).to_string() == "1 [deg<=8]");
  CHECK(Series::monomial({-1, 0}, 8).coefficient({-1, 0}) == 1);
  CHECK_THROWS_AS(Series::monomial({5, 5}, 8), CutoffError);
}

TEST_CASE("add aligns cutoffs and drops zeros") {
  const Series a = poly({{{0, 0}, 1}, {X, 1}}, 8);
  const Series b = poly({{{0, 0}, 1}, {X, -1}}, 8);
  CHECK((a + b).identical(poly({{{0, 0}, 2}}, 8)));
  CHECK((a + Series(8)).identical(a));
  const Series s = Series::monomial(X, 8) + Series::monomial(Y, 3);
  CHECK(s.cutoff() == 3);
  CHECK(s.size() == 2);
}

TEST_CASE("mul") {
  const Series one_x = poly({{{0, 0}, 1}, {X, 1}});
  const Series one_y = poly({{{0, 0}, 1}, {Y, 1}});
  CHECK((one_x * one_y).identical(poly({{{0, 0}, 1}, {X, 1}, {Y, 1}, {{1, 1}, 1}})));
  CHECK((Series::monomial({-1, 0}, 8) * Series::monomial(X, 8)).identical(Series::constant(1, 7)));
  const Series one_minus_x = poly({{{0, 0}, 1}, {X, -1}});
  CHECK((one_x * one_minus_x).identical(poly({{{0, 0}, 1}, {{2, 0}, -1}})));
}

TEST_CASE("mul loses precision against negative valuation") {
  // x^-1 known to degree 4 pulls the unknown degree-5 part of g down to 4.
  const Series f = Series::monomial({-1, 0}, 4);
  const Series g = poly({{{0, 0}, 1}, {X, 1}}, 4);
  CHECK((f * g).cutoff() == 3);
}

TEST_CASE("power") {
  const Series one_x = poly({{{0, 0}, 1}, {X, 1}}, 8);
  CHECK(power(one_x, 2).identical(poly({{{0, 0}, 1}, {X, 2}, {{2, 0}, 1}}, 8)));
  CHECK(power(poly({{{0, 0}, 1}, {X, 1}}, 3), -1).identical(poly({{{0, 0}, 1}, {X, -1}, {{2, 0}, 1}, {{3, 0}, -1}}, 3)));
  const Series one_minus_xy = poly({{{0, 0}, 1}, {{1, 1}, -1}}, 6);
  CHECK(power(one_minus_xy, -2).identical(poly({{{0, 0}, 1}, {{1, 1}, 2}, {{2, 2}, 3}, {{3, 3}, 4}}, 6)));
  CHECK_THROWS_AS(power(poly({{{0, 0}, 2}, {X, 1}}, 5), -1), NonInvertibleError);
  CHECK_THROWS_AS(power(poly({{{0, 0}, 1}, {{1, -1}, 1}}, 5), 2), NonInvertibleError);
  CHECK_THROWS_AS(power(poly({{X, 1}}, 5), -1), NonInvertibleError);
}

TEST_CASE("coefficient") {
  const Series f = poly({{{0, 0}, 1}, {X, 2}}, 3);
  CHECK(f.coefficient(X) == 2);
  CHECK(f.coefficient(Y) == 0);
  CHECK_THROWS_AS(f.coefficient({4, 0}), CutoffError);
}

TEST_CASE("equality compares up to the smaller cutoff") {
  const Series a = poly({{X, 1}, {{3, 0}, 1}}, 4);
  const Series b = poly({{X, 1}}, 2);
  CHECK(a == b);
  CHECK_FALSE(a.identical(b));
  CHECK_FALSE(a == poly({{X, 2}}, 2));
}

TEST_CASE("to_string") {
  CHECK(poly({{{0, 0}, 1}, {X, 2}, {{2, -1}, -1}}).to_string() == "1 + 2*x - x^2*y^-1");
  CHECK(Series(5).to_string() == "0 [deg<=5]");
}

TEST_CASE("divide_exact") {
  const Series one_x = poly({{{0, 0}, 1}, {X, 1}});
  const Series one_y = poly({{{0, 0}, 1}, {Y, 1}});
  const Series prod = one_x * one_y * Series::monomial({-2, 1}, Series::kUnbounded);
  CHECK(divide_exact(prod, one_y).identical(one_x * Series::monomial({-2, 1}, Series::kUnbounded)));
  CHECK_THROWS_AS(divide_exact(one_x, one_y), DivisionError);
  CHECK_THROWS_AS(divide_exact(poly({{X, 3}}), poly({{X, 2}})), DivisionError);
}

TEST_CASE("property: ring axioms modulo cutoff") {
  Gen g(20240611);
  for (int i = 0; i < 150; ++i) {
    const Series a = g.series(), b = g.series(), c = g.series();
    CHECK((a + b) == (b + a));
    CHECK(((a + b) + c) == (a + (b + c)));
    CHECK((a * b) == (b * a));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a * (b + c)) == (a * b + a * c));
  }
}

TEST_CASE("property: power(f, e) * power(f, -e) = 1") {
  Gen g(7);
  for (int i = 0; i < 120; ++i) {
    const Series f = g.unit();
    const auto e = g.uniform(-5, 5);
    CHECK((power(f, e) * power(f, -e)) == Series::constant(1, f.cutoff()));
  }
}

TEST_CASE("property: truncation coherence") {
  Gen g(99);
  for (int i = 0; i < 120; ++i) {
    const Series a = g.series(), b = g.series();
    const auto d = g.uniform(0, 3);
    CHECK((a.truncated(d) + b.truncated(d)).identical((a + b).truncated(d)));
    const Series lhs = a.truncated(d) * b.truncated(d);
    const Series rhs = (a * b).truncated(lhs.cutoff());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("property: coefficient is additive") {
  Gen g(3);
  for (int i = 0; i < 120; ++i) {
    const Series a = g.series(), b = g.series();
    const Exponent m{g.uniform(-2, 3), g.uniform(-2, 3)};
    if (m.degree() > std::min(a.cutoff(), b.cutoff())) continue;
    CHECK((a + b).coefficient(m) == a.coefficient(m) + b.coefficient(m));
  }
}
