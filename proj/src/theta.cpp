#include "thetaforge/theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "thetaforge/geometry.hpp"
#include "thetaforge/parallel.hpp"

namespace thetaforge {

namespace {

using Key = std::pair<std::int64_t, std::int64_t>;
Key key_of(Exponent m) { return {m.m1, m.m2}; }

bool rel_angle_less(Exponent base, Exponent a, Exponent b) {
  auto rel = [&](Exponent w) { return Exponent{base.m1 * w.m1 + base.m2 * w.m2, omega(base, w)}; };
  return angle_less(rel(a), rel(b));
}

// Backward search for broken lines ending at a fixed basepoint.
//
// Read backward from the endpoint, a segment carrying z^m moves along +m, so
// from angular position `pos` it crosses exactly the support rays strictly
// between pos and m, in the rotation sense sign(omega(pos, m)). The starting
// basepoint may be antiparallel to m; it is then nudged counterclockwise and
// the sweep is the open half-turn (Q, -Q).
class BackwardSearch {
 public:
  BackwardSearch(const ScatteringDiagram& d, Exponent p, Exponent q) : d_(d), p_(p), q_(q) {}

  /// Rays crossed, in order of (backward) travel.
  std::vector<std::size_t> crossings(Exponent pos, Exponent m, bool at_start) const {
    std::vector<std::size_t> out;
    if (m.is_zero()) return out;
    const std::int64_t w = omega(pos, m);
    if (w == 0 && same_ray(pos, m)) return out;
    if (w == 0 && !at_start) throw ConsistencyError("broken line runs into the origin");
    const auto& rays = d_.rays();
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const Exponent r = rays[i].ray;
      const bool inside = w > 0    ? strictly_inside_ccw(pos, m, r)
                          : w < 0 ? strictly_inside_ccw(m, pos, r)
                                  : strictly_inside_ccw(pos, -pos, r);
      if (inside) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
      return rel_angle_less(pos, rays[a].ray, rays[b].ray);
    });
    if (w < 0) std::reverse(out.begin(), out.end());
    return out;
  }

  const std::vector<Integer>& power(std::size_t ray, std::int64_t e) {
    auto it = powers_.find({ray, e});
    if (it == powers_.end()) it = powers_.emplace(std::make_pair(ray, e), d_.rays()[ray].wall.power_coeffs(e)).first;
    return it->second;
  }

  /// Calls visit(j, factor, m') for every admissible bend at `ray` of a
  /// segment carrying z^m (j = 0 is passing straight through).
  template <class Visit>
  void branches(std::size_t ray, Exponent m, Visit&& visit) {
    const Wall& w = d_.rays()[ray].wall;
    const std::int64_t e = std::abs(omega(w.direction, m));
    const auto& pc = power(ray, e);
    for (std::size_t j = 0; j < pc.size(); ++j) {
      const Exponent prev = m - static_cast<std::int64_t>(j) * w.direction;
      if (!in_monoid(prev - p_)) break;
      if (pc[j] != 0) visit(static_cast<std::int64_t>(j), pc[j], prev);
    }
  }

  /// Weighted count of backward continuations from (position, m) that
  /// start with z^p. position == npos means the basepoint.
  Integer weight(std::size_t position, Exponent m) {
    const bool start = position == kStart;
    auto memo = memo_.find({position, key_of(m)});
    if (memo != memo_.end()) return memo->second;
    const Exponent pos = start ? q_ : d_.rays()[position].ray;
    const auto cs = crossings(pos, m, start);
    Integer total = 0;
    if (cs.empty()) {
      total = m == p_ ? 1 : 0;
    } else {
      branches(cs.front(), m, [&](std::int64_t, const Integer& f, Exponent prev) {
        total += f * weight(cs.front(), prev);
      });
    }
    memo_.emplace(std::make_pair(position, key_of(m)), total);
    return total;
  }

  void enumerate(std::size_t position, Exponent m, std::vector<BrokenLine::Bend>& trail,
                 const Integer& coeff, Exponent final_m, std::vector<BrokenLine>& out) {
    const bool start = position == kStart;
    const Exponent pos = start ? q_ : d_.rays()[position].ray;
    const auto cs = crossings(pos, m, start);
    if (cs.empty()) {
      if (m != p_) return;
      BrokenLine line{p_, q_, {trail.rbegin(), trail.rend()}, coeff, final_m};
      std::erase_if(line.bends, [](const BrokenLine::Bend& b) { return b.term == 0; });
      out.push_back(std::move(line));
      return;
    }
    const std::size_t ray = cs.front();
    branches(ray, m, [&](std::int64_t j, const Integer& f, Exponent prev) {
      trail.push_back({d_.rays()[ray].ray, d_.rays()[ray].wall.direction, j, f});
      enumerate(ray, prev, trail, coeff * f, final_m, out);
      trail.pop_back();
    });
  }

  static constexpr std::size_t kStart = static_cast<std::size_t>(-1);

 private:
  const ScatteringDiagram& d_;
  Exponent p_;
  Exponent q_;
  std::map<std::pair<std::size_t, std::int64_t>, std::vector<Integer>> powers_;
  std::map<std::pair<std::size_t, Key>, Integer> memo_;
};

/// Final exponents m in p + P with delta(m) <= cutoff, in graded order.
std::vector<Exponent> candidate_exponents(Exponent p, std::int64_t cutoff) {
  std::vector<Exponent> out;
  for (std::int64_t t = 0; p.degree() + t <= cutoff; ++t) {
    for (std::int64_t a = 0; a <= t; ++a) out.push_back(p + Exponent{a, t - a});
  }
  return out;
}

}  // namespace

void ThetaExpansion::add(Exponent m, const Integer& a) {
  if (a == 0) return;
  auto [it, inserted] = coeffs.try_emplace(m, a);
  if (!inserted) {
    it->second += a;
    if (it->second == 0) coeffs.erase(it);
  }
}

std::string to_string(PositivityVerdict::Kind k) {
  switch (k) {
    case PositivityVerdict::Kind::Positive: return "positive";
    case PositivityVerdict::Kind::NegativeWitness: return "negative-witness";
    case PositivityVerdict::Kind::Inconclusive: return "inconclusive-at-cutoff";
  }
  return "";
}

std::string to_string(AtomicityVerdict::Kind k) {
  switch (k) {
    case AtomicityVerdict::Kind::Atomic: return "atomic";
    case AtomicityVerdict::Kind::Decomposable: return "decomposable";
    case AtomicityVerdict::Kind::NotUniversallyPositive: return "not-universally-positive";
  }
  return "";
}

Atlas::Atlas(ScatteringDiagram d, unsigned jobs)
    : d_(std::move(d)), chambers_(thetaforge::chambers(d_)), jobs_(jobs) {
  const std::int64_t b = d_.b(), c = d_.c();
  if (b * c >= 5) {
    // Four directions spread across the open limiting cone, slope q/p
    // between the roots of b t^2 - bc t + c.
    const double disc = std::sqrt(static_cast<double>(b * c) * static_cast<double>(b * c - 4));
    const double t1 = (static_cast<double>(b * c) - disc) / (2.0 * static_cast<double>(b));
    const double t2 = (static_cast<double>(b * c) + disc) / (2.0 * static_cast<double>(b));
    for (int i = 1; i <= 4; ++i) {
      const double t = t1 + (t2 - t1) * i / 5.0;
      const std::int64_t p = 1000;
      std::int64_t q = std::llround(t * 1000.0);
      Exponent dir = primitive({-p, -q});
      while (d_.on_support(dir)) dir = primitive({-p, -(++q)});
      if (in_limiting_cone(b, c, dir)) cone_samples_.push_back(dir);
    }
  }
}

std::int64_t Atlas::theta_cutoff(Exponent p) const {
  return d_.cutoff() + std::min<std::int64_t>(0, p.degree());
}

std::size_t Atlas::adjacent_chamber(Exponent p) const {
  if (p.is_zero()) return 0;
  return locate_chamber(chambers_, p);
}

Exponent Atlas::adjacent_basepoint(Exponent p) const {
  return chambers_[adjacent_chamber(p)].representative;
}

void Atlas::require_off_support(Exponent q) const {
  if (q.is_zero() || d_.on_support(q)) throw OnWallError("basepoint " + to_string(q) + " lies on the support");
}

std::vector<BrokenLine> Atlas::broken_lines(Exponent p, Exponent q) const {
  require_off_support(q);
  if (p.is_zero()) throw ParameterError("broken lines need a nonzero initial exponent");
  BackwardSearch search(d_, p, q);
  std::vector<BrokenLine> out;
  std::vector<BrokenLine::Bend> trail;
  for (Exponent m : candidate_exponents(p, theta_cutoff(p))) {
    search.enumerate(BackwardSearch::kStart, m, trail, 1, m, out);
  }
  return out;
}

Series Atlas::theta_local(Exponent p, Exponent q) const {
  require_off_support(q);
  const auto key = std::make_pair(key_of(p), key_of(q));
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Series out(theta_cutoff(p));
  if (p.is_zero()) {
    out.add_term({0, 0}, 1);
  } else {
    BackwardSearch search(d_, p, q);
    for (Exponent m : candidate_exponents(p, out.cutoff())) {
      out.add_term(m, search.weight(BackwardSearch::kStart, m));
    }
  }
  std::lock_guard lock(cache_mutex_);
  return cache_.try_emplace(key, std::move(out)).first->second;
}

Series Atlas::localize(const ThetaExpansion& combo, Exponent q) const {
  require_off_support(q);
  Series acc(d_.cutoff());
  for (const auto& [m, a] : combo.coeffs) acc += a * theta_local(m, q);
  return acc;
}

PathAutomorphism Atlas::shorter_path(Exponent from, Exponent to) const {
  const Orientation o = omega(from, to) >= 0 ? Orientation::Counterclockwise : Orientation::Clockwise;
  return path_product(d_, from, to, o);
}

Series Atlas::transport(const Series& f, Exponent from, Exponent to) const {
  return apply_path(shorter_path(from, to), f);
}

ThetaExpansion Atlas::expand(const Series& f, Exponent q0) const {
  require_off_support(q0);
  Series rem = f.truncated(d_.cutoff());
  ThetaExpansion out;
  out.cutoff = rem.cutoff();
  out.base = q0;
  while (auto lead = rem.leading_term()) {
    const Exponent p = lead->first;
    // Near R>=0 p the coefficient of z^p is exactly a_p.
    const Series local = transport(rem.truncated(p.degree()), q0, adjacent_basepoint(p));
    const Integer a = local.coefficient(p);
    if (a == 0) throw NotInSpanError("no theta function accounts for the term z^" + to_string(p));
    out.add(p, a);
    rem -= a * theta_local(p, q0);
  }
  return out;
}

std::vector<Exponent> Atlas::positivity_samples() const {
  std::vector<Exponent> out;
  for (const auto& ch : chambers_) out.push_back(ch.representative);
  out.insert(out.end(), cone_samples_.begin(), cone_samples_.end());
  return out;
}

PositivityVerdict Atlas::check_positivity_at(const ThetaExpansion& combo,
                                             const std::vector<Exponent>& basepoints) const {
  PositivityVerdict v;
  v.cutoff = d_.cutoff();
  // Degree up to which the localized combination is known.
  std::int64_t known = d_.cutoff();
  for (const auto& [p, a] : combo.coeffs) known = std::min(known, theta_cutoff(p));

  // Support-adjacent basepoints first: there c_p = a_p, so a negative
  // basis coefficient shows up as a witness at its own exponent.
  for (const auto& [p, a] : combo.coeffs) {
    if (p.degree() > known) continue;
    const Exponent q = adjacent_basepoint(p);
    const auto pos = std::find(basepoints.begin(), basepoints.end(), q);
    if (pos == basepoints.end()) continue;
    const Integer c = localize(combo, q).coefficient(p);
    if (c < 0) {
      v.kind = PositivityVerdict::Kind::NegativeWitness;
      v.witness = PositivityVerdict::Witness{static_cast<std::size_t>(pos - basepoints.begin()), q, p, c};
      return v;
    }
  }

  auto negatives = parallel_map(basepoints.size(), jobs_, [&](std::size_t i) {
    return localize(combo, basepoints[i]).first_negative();
  });
  for (std::size_t i = 0; i < negatives.size(); ++i) {
    if (negatives[i]) {
      v.kind = PositivityVerdict::Kind::NegativeWitness;
      v.witness = PositivityVerdict::Witness{i, basepoints[i], negatives[i]->first, negatives[i]->second};
      return v;
    }
  }

  for (const auto& [p, a] : combo.coeffs) {
    if (p.degree() > known) {
      v.kind = PositivityVerdict::Kind::Inconclusive;
      v.note = "exponent " + to_string(p) + " lies beyond degree " + std::to_string(known) +
               ", where the localized combination stops being exact";
      break;
    }
  }
  return v;
}

PositivityVerdict Atlas::check_universal_positivity(const ThetaExpansion& combo) const {
  return check_positivity_at(combo, positivity_samples());
}

AtomicityVerdict Atlas::check_atomicity(const ThetaExpansion& combo) const {
  AtomicityVerdict v;
  v.positivity = check_universal_positivity(combo);
  if (combo.coeffs.empty() || v.positivity.kind == PositivityVerdict::Kind::NegativeWitness) {
    v.kind = AtomicityVerdict::Kind::NotUniversallyPositive;
    if (combo.coeffs.empty()) v.positivity.note = "the zero element is excluded";
    return v;
  }
  const auto& [p, a] = *combo.coeffs.begin();
  if (combo.coeffs.size() == 1 && a == 1) {
    v.kind = AtomicityVerdict::Kind::Atomic;
    return v;
  }
  ThetaExpansion first, rest = combo;
  first.cutoff = combo.cutoff;
  first.base = combo.base;
  first.add(p, 1);
  rest.add(p, -1);
  v.kind = AtomicityVerdict::Kind::Decomposable;
  v.certificate = std::make_pair(std::move(first), std::move(rest));
  return v;
}

ThetaExpansion Atlas::structure_constants(Exponent p, Exponent q, std::optional<Exponent> q0) const {
  const Exponent base = q0.value_or(chambers_.front().representative);
  return expand(theta_local(p, base) * theta_local(q, base), base);
}

TransitionReport Atlas::check_transition_positivity(Exponent from, Exponent to,
                                                    const std::vector<Exponent>& exponents) const {
  require_off_support(from);
  require_off_support(to);
  TransitionReport report;
  report.cutoff = d_.cutoff();
  report.from = from;
  report.to = to;
  const PathAutomorphism path = shorter_path(from, to);

  auto witnesses = parallel_map(exponents.size(), jobs_, [&](std::size_t i) {
    const Exponent m = exponents[i];
    const std::int64_t k = d_.cutoff();
    Series num = Series::monomial(m, k);
    Series den = Series::constant(1, k);
    // theta(N / D) = theta(N) f^K / (theta(D) f^K), where K clears every
    // negative wall power in both.
    for (const auto& x : path.crossings) {
      auto deficit = [&](const Series& s) {
        std::int64_t lowest = 0;
        for (const auto& t : s.terms()) lowest = std::min(lowest, x.sign * omega(x.wall.direction, t.first));
        return -lowest;
      };
      const std::int64_t shift = deficit(num) + deficit(den);
      const Series fk = power(x.wall.function(), shift);
      num = crossing_apply(x.wall, x.sign, num) * fk;
      den = crossing_apply(x.wall, x.sign, den) * fk;
    }
    TransitionWitness w{m, num, den, true};
    const Series image = apply_path(path, Series::monomial(m, k));
    w.pass = num.nonnegative() && den.nonnegative() && image * den == num;
    return w;
  });
  for (auto& w : witnesses) {
    report.pass = report.pass && w.pass;
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

}  // namespace thetaforge
