#include "thetaforge/series.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <numeric>
#include <sstream>

namespace thetaforge {

std::int64_t gcd_of(Exponent m) { return std::gcd(m.m1, m.m2); }

Exponent primitive(Exponent m) {
  if (m.is_zero()) throw ParameterError("primitive direction of the zero vector");
  const std::int64_t g = gcd_of(m);
  return {m.m1 / g, m.m2 / g};
}

std::string to_string(Exponent m) {
  return "(" + std::to_string(m.m1) + "," + std::to_string(m.m2) + ")";
}

std::int64_t cutoff_add(std::int64_t a, std::int64_t b) {
  if (a >= Series::kUnbounded || b >= Series::kUnbounded) return Series::kUnbounded;
  return std::min(a + b, Series::kUnbounded);
}

Series::Series(std::int64_t cutoff) : cutoff_(std::min(cutoff, kUnbounded)) {}

Series Series::monomial(Exponent p, std::int64_t cutoff, const Integer& c) {
  if (p.degree() > cutoff) {
    throw CutoffError("monomial z^" + thetaforge::to_string(p) + " has degree " +
                      std::to_string(p.degree()) + " beyond cutoff " + std::to_string(cutoff));
  }
  Series s(cutoff);
  s.add_term(p, c);
  return s;
}

Series Series::constant(const Integer& c, std::int64_t cutoff) {
  Series s(cutoff);
  s.add_term({0, 0}, c);
  return s;
}

Integer Series::coefficient(Exponent m) const {
  if (m.degree() > cutoff_) {
    throw CutoffError("coefficient of z^" + thetaforge::to_string(m) +
                      " is beyond cutoff " + std::to_string(cutoff_));
  }
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::int64_t Series::valuation() const {
  if (terms_.empty()) return cutoff_add(cutoff_, 1);
  return terms_.begin()->first.degree();
}

std::optional<std::pair<Exponent, Integer>> Series::leading_term() const {
  if (terms_.empty()) return std::nullopt;
  return *terms_.begin();
}

Series Series::truncated(std::int64_t cutoff) const {
  Series out(std::min(cutoff, cutoff_));
  for (const auto& [m, c] : terms_) {
    if (m.degree() > out.cutoff_) break;
    out.terms_.emplace_hint(out.terms_.end(), m, c);
  }
  return out;
}

void Series::add_term(Exponent m, const Integer& c) {
  if (m.degree() > cutoff_ || c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Series::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

std::optional<std::pair<Exponent, Integer>> Series::first_negative() const {
  for (const auto& t : terms_) {
    if (t.second < 0) return t;
  }
  return std::nullopt;
}

Series Series::shifted(Exponent shift) const {
  Series out(cutoff_add(cutoff_, shift.degree()));
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m + shift, c);
  return out;
}

Series& Series::operator+=(const Series& g) {
  if (g.cutoff_ < cutoff_) *this = truncated(g.cutoff_);
  for (const auto& [m, c] : g.terms_) {
    if (m.degree() > cutoff_) break;
    add_term(m, c);
  }
  return *this;
}

Series& Series::operator-=(const Series& g) {
  if (g.cutoff_ < cutoff_) *this = truncated(g.cutoff_);
  for (const auto& [m, c] : g.terms_) {
    if (m.degree() > cutoff_) break;
    add_term(m, -c);
  }
  return *this;
}

Series& Series::operator*=(const Integer& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= k;
  return *this;
}

Series Series::operator-() const {
  Series out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Series operator*(const Series& f, const Series& g) {
  // A factor of negative valuation pulls unknown high-degree terms of the
  // other factor down into the result, so the known range shrinks.
  std::int64_t cutoff = std::min(f.cutoff_, g.cutoff_);
  cutoff = std::min(cutoff, cutoff_add(f.cutoff_, g.valuation()));
  cutoff = std::min(cutoff, cutoff_add(g.cutoff_, f.valuation()));
  Series out(cutoff);
  for (const auto& [mf, cf] : f.terms_) {
    const std::int64_t room = out.cutoff_ - mf.degree();
    for (const auto& [mg, cg] : g.terms_) {
      if (mg.degree() > room) break;
      auto [it, inserted] = out.terms_.try_emplace(mf + mg, cf * cg);
      if (!inserted) it->second += cf * cg;
    }
  }
  std::erase_if(out.terms_, [](const auto& t) { return t.second == 0; });
  return out;
}

bool operator==(const Series& f, const Series& g) {
  const std::int64_t d = std::min(f.cutoff_, g.cutoff_);
  auto fi = f.terms_.begin();
  auto gi = g.terms_.begin();
  while (true) {
    const bool f_done = fi == f.terms_.end() || fi->first.degree() > d;
    const bool g_done = gi == g.terms_.end() || gi->first.degree() > d;
    if (f_done || g_done) return f_done && g_done;
    if (fi->first != gi->first || fi->second != gi->second) return false;
    ++fi;
    ++gi;
  }
}

std::string Series::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool unit = m.is_zero();
    Integer a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (unit || a != 1) {
      os << a;
      if (!unit) os << "*";
    }
    bool wrote = false;
    auto var = [&](const char* name, std::int64_t e) {
      if (e == 0) return;
      if (wrote) os << "*";
      os << name;
      if (e != 1) os << "^" << e;
      wrote = true;
    };
    var("x", m.m1);
    var("y", m.m2);
  }
  if (first) os << "0";
  if (!exact()) os << " [deg<=" << cutoff_ << "]";
  return os.str();
}

namespace {

void require_unit(const Series& f) {
  for (const auto& [m, c] : f.terms()) {
    if (m.is_zero()) {
      if (c != 1) throw NonInvertibleError("constant term is " + c.get_str() + ", expected 1");
    } else if (m.degree() < 1) {
      throw NonInvertibleError("term z^" + to_string(m) + " of degree " +
                               std::to_string(m.degree()) + " in a unit series");
    }
  }
  if (f.cutoff() >= 0 && f.terms().find({0, 0}) == f.terms().end()) {
    throw NonInvertibleError("constant term is 0, expected 1");
  }
}

Series inverse(const Series& f) {
  Series tail = f;
  tail.add_term({0, 0}, -1);
  if (tail.is_zero()) return Series::constant(1, f.cutoff());
  if (f.exact()) throw NonInvertibleError("inverse of an exact non-monomial has no finite expansion");
  // g <- 1 - t g fixes one more degree per pass.
  Series g = Series::constant(1, f.cutoff());
  for (std::int64_t i = 0; i < f.cutoff(); ++i) {
    Series next = Series::constant(1, f.cutoff());
    next -= tail * g;
    if (next.identical(g)) break;
    g = std::move(next);
  }
  return g;
}

}  // namespace

Series power(const Series& f, std::int64_t e) {
  if (f.cutoff() < 0) return Series(f.cutoff());
  require_unit(f);
  Series base = e < 0 ? inverse(f) : f;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-e) : static_cast<std::uint64_t>(e);
  Series result = Series::constant(1, f.cutoff());
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Series divide_exact(const Series& num, const Series& den) {
  if (!num.exact() || !den.exact()) throw DivisionError("exact division needs exact Laurent polynomials");
  if (den.is_zero()) throw DivisionError("division by zero");
  if (num.is_zero()) return Series();

  struct Lex {
    bool operator()(const Exponent& a, const Exponent& b) const {
      return a.m1 != b.m1 ? a.m1 > b.m1 : a.m2 > b.m2;
    }
  };
  std::map<Exponent, Integer, Lex> rem(num.terms().begin(), num.terms().end());
  std::map<Exponent, Integer, Lex> divisor(den.terms().begin(), den.terms().end());
  const auto [lead_exp, lead_coeff] = *divisor.begin();

  auto bounds = [](const auto& terms) {
    std::int64_t lo1 = INT64_MAX, hi1 = INT64_MIN, lo2 = INT64_MAX, hi2 = INT64_MIN;
    for (const auto& t : terms) {
      lo1 = std::min(lo1, t.first.m1);
      hi1 = std::max(hi1, t.first.m1);
      lo2 = std::min(lo2, t.first.m2);
      hi2 = std::max(hi2, t.first.m2);
    }
    return std::array<std::int64_t, 4>{lo1, hi1, lo2, hi2};
  };
  // Newton polytopes add under multiplication, so the quotient lives in this box.
  const auto nb = bounds(num.terms());
  const auto db = bounds(den.terms());
  const std::int64_t q_lo1 = nb[0] - db[0], q_hi1 = nb[1] - db[1];
  const std::int64_t q_lo2 = nb[2] - db[2], q_hi2 = nb[3] - db[3];

  Series quotient;
  while (!rem.empty()) {
    const auto [r_exp, r_coeff] = *rem.begin();
    const Exponent q = r_exp - lead_exp;
    if (q.m1 < q_lo1 || q.m1 > q_hi1 || q.m2 < q_lo2 || q.m2 > q_hi2 ||
        !mpz_divisible_p(r_coeff.get_mpz_t(), lead_coeff.get_mpz_t())) {
      throw DivisionError("inexact division: remainder term z^" + to_string(r_exp));
    }
    const Integer qc = r_coeff / lead_coeff;
    quotient.add_term(q, qc);
    for (const auto& [m, c] : divisor) {
      auto [it, inserted] = rem.try_emplace(m + q, -qc * c);
      if (!inserted) {
        it->second -= qc * c;
        if (it->second == 0) rem.erase(it);
      }
    }
  }
  return quotient;
}

}  // namespace thetaforge
