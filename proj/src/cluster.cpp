#include "thetaforge/cluster.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "thetaforge/geometry.hpp"
#include "thetaforge/parallel.hpp"

namespace thetaforge {

namespace {

constexpr std::size_t kMaxTerms = 2'000'000;
constexpr std::int64_t kMaxEntry = std::int64_t{1} << 40;
constexpr double kMaxPackedWords = 1 << 25;

std::int64_t exchange_exponent(std::int64_t b, std::int64_t c, std::int64_t n) {
  return n % 2 == 0 ? b : c;
}

Series exact_monomial(Exponent m) { return Series::monomial(m, Series::kUnbounded); }

Series ipow(const Series& f, std::int64_t e) {
  Series out = Series::constant(1, Series::kUnbounded);
  for (std::int64_t i = 0; i < e; ++i) out = out * f;
  return out;
}

Exponent support_min(const Series& f) {
  Exponent m = f.terms().begin()->first;
  for (const auto& t : f.terms()) {
    m.m1 = std::min(m.m1, t.first.m1);
    m.m2 = std::min(m.m2, t.first.m2);
  }
  return m;
}

ClusterVariable normalized(const Series& laurent, Exponent gvec) {
  const Exponent low = support_min(laurent);
  return {laurent.shifted(-low), exact_monomial(-low), gvec};
}

// Kronecker substitution: a polynomial with non-negative coefficients and
// exponents in [0, width) x [0, inf) becomes one integer, each coefficient
// taking `limbs` 64-bit words. Products and exact quotients then run on GMP.
struct Packing {
  std::int64_t width;
  std::size_t limbs;
};

Integer pack(const Series& f, const Packing& p) {
  std::int64_t top = 0;
  for (const auto& [m, c] : f.terms()) top = std::max(top, m.m1 + p.width * m.m2);
  std::vector<std::uint64_t> words(static_cast<std::size_t>(top + 1) * p.limbs, 0);
  for (const auto& [m, c] : f.terms()) {
    const auto at = static_cast<std::size_t>(m.m1 + p.width * m.m2) * p.limbs;
    mpz_export(&words[at], nullptr, -1, sizeof(std::uint64_t), 0, 0, c.get_mpz_t());
  }
  Integer out;
  mpz_import(out.get_mpz_t(), words.size(), -1, sizeof(std::uint64_t), 0, 0, words.data());
  return out;
}

Series unpack(const Integer& v, const Packing& p) {
  std::vector<std::uint64_t> words(mpz_sizeinbase(v.get_mpz_t(), 2) / 64 + 1, 0);
  std::size_t count = 0;
  mpz_export(words.data(), &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  Series out;
  for (std::size_t at = 0; at < count; at += p.limbs) {
    const std::size_t n = std::min(p.limbs, count - at);
    Integer c;
    mpz_import(c.get_mpz_t(), n, -1, sizeof(std::uint64_t), 0, 0, &words[at]);
    if (c == 0) continue;
    const auto k = static_cast<std::int64_t>(at / p.limbs);
    out.add_term({k % p.width, k / p.width}, c);
  }
  return out;
}

std::size_t bits(const Integer& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

bool non_negative(const Series& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [](const auto& t) { return t.second > 0; });
}

/// base^e / divisor when the quotient is a polynomial with non-negative
/// coefficients; nullopt when that cannot be certified this way.
std::optional<Series> packed_quotient(const Series& base, std::int64_t e, const Series& divisor) {
  if (base.is_zero() || divisor.is_zero() || !non_negative(base) || !non_negative(divisor)) return std::nullopt;
  const Exponent lb = support_min(base), ld = support_min(divisor);
  const Series B = base.shifted(-lb), D = divisor.shifted(-ld);
  std::int64_t bx = 0, dx = 0;
  Integer sum_b = 0, sum_d = 0;
  for (const auto& [m, c] : B.terms()) bx = std::max(bx, m.m1), sum_b += c;
  for (const auto& [m, c] : D.terms()) dx = std::max(dx, m.m1), sum_d += c;

  // Every coefficient of B^e is at most sum_b^e; the extra room keeps the
  // product check below free of carries.
  const std::size_t s = static_cast<std::size_t>(e) * bits(sum_b) + bits(sum_d) + 2;
  const Packing p{e * bx + 1, (s + 63) / 64};
  std::int64_t by = 0;
  for (const auto& [m, c] : B.terms()) by = std::max(by, m.m2);
  const double words = static_cast<double>(p.width) * static_cast<double>(e * by + 1) * static_cast<double>(p.limbs);
  if (words > kMaxPackedWords) throw Error("cluster variable exceeds the size limit; lower the depth");
  Integer pb = pack(B, p), pp, q, r;
  mpz_pow_ui(pp.get_mpz_t(), pb.get_mpz_t(), static_cast<unsigned long>(e));
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t(), pack(D, p).get_mpz_t());
  if (r != 0) return std::nullopt;

  const Series Q = unpack(q, p);
  // Q * D = B^e holds as integers; it holds as polynomials once no product
  // coefficient or row can overflow its slot.
  std::int64_t qx = 0;
  Integer max_q = 0;
  for (const auto& [m, c] : Q.terms()) qx = std::max(qx, m.m1), max_q = std::max(max_q, c);
  if (qx + dx >= p.width || bits(max_q) + bits(sum_d) >= 64 * p.limbs) return std::nullopt;
  return Q.shifted(e * lb - ld);
}

Exponent monomial_exponent(const Series& f) {
  if (f.size() != 1 || f.terms().begin()->second != 1) return {INT64_MIN, 0};
  return f.terms().begin()->first;
}

/// (1 + a)^e / other, with a and other given as fractions.
ClusterVariable exchange(const ClusterVariable& a, const ClusterVariable& other, std::int64_t e) {
  const Exponent g = e * cmin0(a.gvec) - other.gvec;
  if (std::max(std::abs(g.m1), std::abs(g.m2)) > kMaxEntry) throw ParameterError("g-vector overflow; lower the depth");

  const Exponent da = monomial_exponent(a.denominator), dother = monomial_exponent(other.denominator);
  if (da.m1 != INT64_MIN && dother.m1 != INT64_MIN) {
    if (auto q = packed_quotient(a.denominator + a.numerator, e, other.numerator)) {
      if (q->size() > kMaxTerms) throw Error("cluster variable exceeds the size limit; lower the depth");
      return normalized(q->shifted(dother - e * da), g);
    }
  }
  const Series num = ipow(a.denominator + a.numerator, e) * other.denominator;
  const Series den = ipow(a.denominator, e) * other.numerator;
  if (num.size() > kMaxTerms) throw Error("cluster variable exceeds the size limit; lower the depth");
  return normalized(divide_exact(num, den), g);
}

ClusterVariable formal(Exponent m) { return {exact_monomial(m), Series::constant(1, Series::kUnbounded), m}; }

/// a_n for n in [lo, hi], with a_base, a_{base+1} the formal x or y
/// according to slot (odd n -> x).
std::map<std::int64_t, ClusterVariable> sequence(std::int64_t b, std::int64_t c, std::int64_t base,
                                                 std::int64_t lo, std::int64_t hi) {
  auto slot = [](std::int64_t n) { return n % 2 != 0 ? Exponent{1, 0} : Exponent{0, 1}; };
  std::map<std::int64_t, ClusterVariable> a;
  a.emplace(base, formal(slot(base)));
  a.emplace(base + 1, formal(slot(base + 1)));
  for (std::int64_t n = base + 1; n < hi; ++n) {
    a.emplace(n + 1, exchange(a.at(n), a.at(n - 1), exchange_exponent(b, c, n)));
  }
  for (std::int64_t n = base; n > lo; --n) {
    a.emplace(n - 1, exchange(a.at(n), a.at(n + 1), exchange_exponent(b, c, n)));
  }
  return a;
}

/// Visiting order 0, 1, -1, 2, -2, ...
std::vector<std::int64_t> zigzag(std::int64_t depth) {
  std::vector<std::int64_t> out{0};
  for (std::int64_t j = 1; j <= depth; ++j) {
    out.push_back(j);
    out.push_back(-j);
  }
  return out;
}

}  // namespace

Exponent cmin0(Exponent v) { return {std::min<std::int64_t>(0, v.m1), std::min<std::int64_t>(0, v.m2)}; }

Series ClusterVariable::laurent() const { return divide_exact(numerator, denominator); }

bool same_cluster(const Seed& a, const Seed& b) {
  if (a.b != b.b || a.c != b.c) return false;
  for (int i = 0; i < 2; ++i) {
    if (a.vars[i].gvec != b.vars[i].gvec) return false;
    if (!a.vars[i].laurent().identical(b.vars[i].laurent())) return false;
  }
  return true;
}

Seed initial_seed(std::int64_t b, std::int64_t c) {
  if (b < 0 || c < 0) throw ParameterError("exchange parameters must be non-negative");
  Seed s;
  s.b = b;
  s.c = c;
  s.vars = {formal({1, 0}), formal({0, 1})};
  return s;
}

Seed mutate(const Seed& s, int dir) {
  if (dir != 1 && dir != 2) throw ParameterError("mutation direction must be 1 or 2");
  Seed out = s;
  const int i = dir - 1, o = 1 - i;
  out.vars[i] = exchange(s.vars[o], s.vars[i], dir == 1 ? s.b : s.c);
  out.word.push_back(dir);
  return out;
}

std::vector<ClusterVariableEntry> cluster_variables(std::int64_t b, std::int64_t c, std::int64_t depth,
                                                    bool skip_inverses) {
  if (b < 0 || c < 0) throw ParameterError("exchange parameters must be non-negative");
  if (depth < 0) throw ParameterError("depth must be non-negative");
  const auto a = sequence(b, c, 1, 1 - depth, 2 + depth);

  std::vector<std::int64_t> order{1, 2};
  for (std::int64_t s = 1; s <= depth; ++s) {
    order.push_back(2 + s);
    order.push_back(1 - s);
  }
  std::vector<ClusterVariableEntry> out;
  for (std::int64_t n : order) {
    const Series l = a.at(n).laurent();
    const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& e) { return e.laurent.identical(l); });
    if (seen) continue;
    if (skip_inverses && l.size() == 1) {
      const Exponent inv = -l.terms().begin()->first;
      const bool inverse_listed = std::any_of(out.begin(), out.end(), [&](const auto& e) {
        return e.laurent.size() == 1 && e.laurent.terms().begin()->first == inv;
      });
      if (inverse_listed) continue;
    }
    out.push_back({l, a.at(n).gvec, n});
  }
  return out;
}

std::vector<Exponent> gvector_range(std::int64_t b, std::int64_t c, std::int64_t lo, std::int64_t hi) {
  lo = std::min<std::int64_t>(lo, 1);
  hi = std::max<std::int64_t>(hi, 2);
  std::map<std::int64_t, Exponent> g{{1, {1, 0}}, {2, {0, 1}}};
  auto check = [](Exponent v) {
    if (std::max(std::abs(v.m1), std::abs(v.m2)) > kMaxEntry) throw ParameterError("g-vector overflow; lower the depth");
    return v;
  };
  for (std::int64_t n = 2; n < hi; ++n) g[n + 1] = check(exchange_exponent(b, c, n) * cmin0(g[n]) - g[n - 1]);
  for (std::int64_t n = 1; n > lo; --n) g[n - 1] = check(exchange_exponent(b, c, n) * cmin0(g[n]) - g[n + 1]);
  std::vector<Exponent> out;
  for (std::int64_t n = lo; n <= hi; ++n) out.push_back(g[n]);
  return out;
}

std::vector<ClusterChamber> cluster_chambers(std::int64_t b, std::int64_t c, std::int64_t depth) {
  if (b < 0 || c < 0) throw ParameterError("exchange parameters must be non-negative");
  if (depth < 0) throw ParameterError("depth must be non-negative");
  const std::int64_t lo = 1 - depth;
  const auto g = gvector_range(b, c, lo, 2 + depth);
  std::vector<ClusterChamber> out;
  std::set<std::array<std::int64_t, 4>> seen;
  for (std::int64_t j : zigzag(depth)) {
    Exponent u = g[j + 1 - lo], v = g[j + 2 - lo];
    if (omega(u, v) < 0) std::swap(u, v);
    if (!seen.insert({u.m1, u.m2, v.m1, v.m2}).second) continue;
    out.push_back({u, v, j});
  }
  return out;
}

bool in_cone_interior(const ClusterChamber& ch, Exponent v) {
  return omega(ch.low, v) > 0 && omega(v, ch.high) > 0;
}

LaurentPositivityReport check_laurent_positivity(std::int64_t b, std::int64_t c, std::int64_t depth) {
  if (b < 0 || c < 0) throw ParameterError("exchange parameters must be non-negative");
  if (depth < 0) throw ParameterError("depth must be non-negative");
  LaurentPositivityReport report;
  report.depth = depth;
  // Seed S_j is S_0 (j even) or S_{-1} (j odd) up to an even index shift,
  // so two formal sequences cover every (seed, variable) pair.
  const std::int64_t reach = 2 * depth + 3;
  const auto even_base = sequence(b, c, 1, 1 - reach, 2 + reach);
  const auto odd_base = sequence(b, c, 0, -reach, 1 + reach);

  for (std::int64_t j = -depth; j <= depth && report.pass; ++j) {
    const bool even = j % 2 == 0;
    const std::int64_t shift = even ? j : j + 1;
    const auto& seq = even ? even_base : odd_base;
    for (std::int64_t t = 1 - depth; t <= 2 + depth; ++t) {
      ++report.checked;
      const Series l = seq.at(t - shift).laurent();
      if (auto neg = l.first_negative()) {
        report.pass = false;
        report.witness = LaurentPositivityReport::Witness{j, t, neg->first, neg->second, "negative coefficient"};
        break;
      }
    }
  }
  return report;
}

ClusterAgreementReport check_cluster_theta_agreement(Atlas& atlas, std::int64_t depth) {
  const auto& d = atlas.diagram();
  ClusterAgreementReport report;
  report.cutoff = d.cutoff();
  report.depth = depth;
  auto& chs = atlas.chambers();
  report.basepoint = chs[locate_chamber(chs, {1, 1})].representative;

  const auto vars = cluster_variables(d.b(), d.c(), depth, false);
  report.entries = parallel_map(vars.size(), atlas.jobs(), [&](std::size_t i) {
    AgreementEntry e{vars[i].gvec, vars[i].laurent, atlas.theta_local(vars[i].gvec, report.basepoint), false};
    e.match = e.theta == e.variable;
    return e;
  });

  std::set<std::pair<std::int64_t, std::int64_t>> matched;
  for (const auto& e : report.entries) {
    report.pass = report.pass && e.match;
    if (e.match) matched.insert({e.gvec.m1, e.gvec.m2});
  }
  const auto cones = cluster_chambers(d.b(), d.c(), depth);
  for (std::size_t i = 0; i < chs.size(); ++i) {
    for (const auto& cone : cones) {
      if (matched.count({cone.low.m1, cone.low.m2}) && matched.count({cone.high.m1, cone.high.m2}) &&
          in_cone_interior(cone, chs[i].representative)) {
        chs[i].is_cluster = true;
        report.cluster_chambers.push_back(i);
        break;
      }
    }
  }
  return report;
}

PositivityVerdict cluster_atlas_positivity(const Atlas& atlas, const ThetaExpansion& combo, std::int64_t depth) {
  const auto& d = atlas.diagram();
  const auto cones = cluster_chambers(d.b(), d.c(), depth);
  std::vector<Exponent> basepoints;
  std::vector<std::size_t> chamber_index;
  for (std::size_t i = 0; i < atlas.chambers().size(); ++i) {
    const Exponent q = atlas.chambers()[i].representative;
    if (std::any_of(cones.begin(), cones.end(), [&](const auto& cone) { return in_cone_interior(cone, q); })) {
      basepoints.push_back(q);
      chamber_index.push_back(i);
    }
  }
  PositivityVerdict v = atlas.check_positivity_at(combo, basepoints);
  if (v.witness) v.witness->chamber = chamber_index[v.witness->chamber];
  v.atlas = "cluster atlas, depth-limited";
  return v;
}

}  // namespace thetaforge
