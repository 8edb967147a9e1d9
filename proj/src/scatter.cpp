#include "thetaforge/scatter.hpp"

#include <algorithm>
#include <map>

#include "thetaforge/geometry.hpp"
#include "thetaforge/parallel.hpp"

namespace thetaforge {

namespace {

using Coeffs = std::vector<Integer>;  // index j holds the coefficient of t^j

Coeffs uni_mul(const Coeffs& a, const Coeffs& b, std::size_t len) {
  Coeffs out(len, 0);
  for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Coeffs uni_inverse(const Coeffs& a, std::size_t len) {
  Coeffs g(len, 0);
  g[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    Integer s = 0;
    for (std::size_t j = 1; j <= n && j < a.size(); ++j) s += a[j] * g[n - j];
    g[n] = -s;
  }
  return g;
}

Coeffs uni_pow(Coeffs base, std::int64_t e, std::size_t len) {
  if (e < 0) {
    base = uni_inverse(base, len);
    e = -e;
  }
  Coeffs result(len, 0);
  result[0] = 1;
  while (e > 0) {
    if (e & 1) result = uni_mul(result, base, len);
    e >>= 1;
    if (e > 0) base = uni_mul(base, base, len);
  }
  return result;
}

void strip_trailing_zeros(Coeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

/// f * g for wall functions given by c_1..c_J lists.
Coeffs merge_functions(const Coeffs& f, const Coeffs& g, std::size_t max_index) {
  Coeffs a{1}, b{1};
  a.insert(a.end(), f.begin(), f.end());
  b.insert(b.end(), g.begin(), g.end());
  Coeffs prod = uni_mul(a, b, max_index + 1);
  prod.erase(prod.begin());
  strip_trailing_zeros(prod);
  return prod;
}

bool rel_angle_less(Exponent base, Exponent a, Exponent b) {
  auto rel = [&](Exponent w) { return Exponent{base.m1 * w.m1 + base.m2 * w.m2, omega(base, w)}; };
  return angle_less(rel(a), rel(b));
}

int crossing_sign(const Wall& w, Exponent ray, Orientation o) {
  const Exponent v = o == Orientation::Counterclockwise ? rotate_ccw(ray) : -rotate_ccw(ray);
  return omega(w.direction, v) < 0 ? 1 : -1;
}

}  // namespace

bool Wall::trivial() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return c == 0; });
}

std::int64_t Wall::max_index() const {
  const std::int64_t d = direction.degree();
  if (d <= 0 || cutoff < 0) return 0;
  return cutoff / d;
}

Series Wall::function() const {
  Series f = Series::constant(1, cutoff);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    f.add_term(static_cast<std::int64_t>(j + 1) * direction, coeffs[j]);
  }
  return f;
}

std::vector<Exponent> Wall::support() const {
  if (kind == SupportKind::Line) return {direction, -direction};
  return {-direction};
}

std::vector<Integer> Wall::power_coeffs(std::int64_t e) const {
  const auto len = static_cast<std::size_t>(max_index()) + 1;
  Coeffs base{1};
  base.insert(base.end(), coeffs.begin(), coeffs.end());
  if (base.size() > len) base.resize(len);
  return uni_pow(std::move(base), e, len);
}

ScatteringDiagram::ScatteringDiagram(std::int64_t b, std::int64_t c, std::int64_t cutoff,
                                     std::vector<Wall> walls)
    : b_(b), c_(c), cutoff_(cutoff) {
  if (b < 0 || c < 0) throw ParameterError("exchange parameters must be non-negative");
  if (cutoff < 1) throw ParameterError("cutoff must be at least 1");

  std::map<std::pair<int, std::pair<std::int64_t, std::int64_t>>, std::size_t> index;
  for (auto& w : walls) {
    if (w.direction.is_zero() || !in_monoid(w.direction) || gcd_of(w.direction) != 1) {
      throw ParameterError("wall direction " + to_string(w.direction) +
                           " must be primitive with non-negative entries");
    }
    w.cutoff = cutoff;
    if (w.coeffs.size() > static_cast<std::size_t>(w.max_index())) w.coeffs.resize(w.max_index());
    strip_trailing_zeros(w.coeffs);

    const auto key = std::make_pair(static_cast<int>(w.kind), std::make_pair(w.direction.m1, w.direction.m2));
    auto [it, inserted] = index.try_emplace(key, walls_.size());
    if (inserted) {
      walls_.push_back(std::move(w));
    } else {
      Wall& into = walls_[it->second];
      into.coeffs = merge_functions(into.coeffs, w.coeffs, into.max_index());
    }
  }
  std::stable_sort(walls_.begin(), walls_.end(), [](const Wall& a, const Wall& b) {
    if (a.direction != b.direction) return angle_less(a.direction, b.direction);
    return a.kind == SupportKind::Line && b.kind == SupportKind::Ray;
  });

  for (std::size_t i = 0; i < walls_.size(); ++i) {
    const Wall& w = walls_[i];
    if (w.trivial()) continue;
    for (Exponent r : w.support()) {
      auto it = std::find_if(rays_.begin(), rays_.end(), [&](const SupportRay& s) { return s.ray == r; });
      if (it == rays_.end()) {
        rays_.push_back({r, w, {i}});
      } else {
        it->wall.kind = SupportKind::Ray;
        it->wall.coeffs = merge_functions(it->wall.coeffs, w.coeffs, w.max_index());
        it->sources.push_back(i);
      }
    }
  }
  std::sort(rays_.begin(), rays_.end(),
            [](const SupportRay& a, const SupportRay& b) { return angle_less(a.ray, b.ray); });
}

bool ScatteringDiagram::on_support(Exponent direction) const {
  if (direction.is_zero()) return !rays_.empty();
  return std::any_of(rays_.begin(), rays_.end(),
                     [&](const SupportRay& s) { return same_ray(s.ray, direction); });
}

ScatteringDiagram ScatteringDiagram::truncated(std::int64_t cutoff) const {
  const std::int64_t k = std::min(cutoff, cutoff_);
  std::vector<Wall> kept;
  for (Wall w : walls_) {
    w.cutoff = k;
    if (w.coeffs.size() > static_cast<std::size_t>(w.max_index())) w.coeffs.resize(w.max_index());
    strip_trailing_zeros(w.coeffs);
    if (w.kind == SupportKind::Line || !w.trivial()) kept.push_back(std::move(w));
  }
  return ScatteringDiagram(b_, c_, k, std::move(kept));
}

ScatteringDiagram initial_diagram(std::int64_t b, std::int64_t c, std::int64_t cutoff) {
  if (b < 0 || c < 0) throw ParameterError("exchange parameters must be non-negative");
  if (cutoff < 1) throw ParameterError("cutoff must be at least 1");
  auto binomials = [&](std::int64_t n) {
    Coeffs out;
    for (std::int64_t j = 1; j <= std::min(n, cutoff); ++j) {
      Integer v;
      mpz_bin_uiui(v.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
      out.push_back(v);
    }
    return out;
  };
  std::vector<Wall> walls;
  walls.push_back({SupportKind::Line, {1, 0}, binomials(c), cutoff});
  walls.push_back({SupportKind::Line, {0, 1}, binomials(b), cutoff});
  return ScatteringDiagram(b, c, cutoff, std::move(walls));
}

Series crossing_apply(const Wall& w, int sign, const Series& f) {
  const std::int64_t cutoff = std::min(f.cutoff(), cutoff_add(w.cutoff, f.valuation()));
  Series out(cutoff);
  std::map<std::int64_t, Coeffs> powers;
  for (const auto& [m, c] : f.terms()) {
    if (m.degree() > cutoff) break;
    const std::int64_t e = sign * omega(w.direction, m);
    if (e == 0) {
      out.add_term(m, c);
      continue;
    }
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, w.power_coeffs(e)).first;
    const Coeffs& p = it->second;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const Exponent n = m + static_cast<std::int64_t>(j) * w.direction;
      if (n.degree() > cutoff) break;
      if (p[j] != 0) out.add_term(n, c * p[j]);
    }
  }
  return out;
}

PathAutomorphism PathAutomorphism::reversed() const {
  PathAutomorphism r;
  r.crossings.assign(crossings.rbegin(), crossings.rend());
  for (auto& x : r.crossings) x.sign = -x.sign;
  return r;
}

PathAutomorphism path_product(const ScatteringDiagram& d, Exponent start, Exponent end,
                              Orientation orientation) {
  if (start.is_zero() || end.is_zero()) throw OnWallError("basepoint at the origin");
  if (d.on_support(start)) throw OnWallError("basepoint " + to_string(start) + " lies on a wall");
  if (d.on_support(end)) throw OnWallError("basepoint " + to_string(end) + " lies on a wall");
  PathAutomorphism a;
  if (same_ray(start, end)) return a;
  const bool ccw = orientation == Orientation::Counterclockwise;
  std::vector<const SupportRay*> hit;
  for (const auto& s : d.rays()) {
    if (ccw ? strictly_inside_ccw(start, end, s.ray) : strictly_inside_ccw(end, start, s.ray)) {
      hit.push_back(&s);
    }
  }
  std::sort(hit.begin(), hit.end(), [&](const SupportRay* x, const SupportRay* y) {
    return rel_angle_less(start, x->ray, y->ray);
  });
  if (!ccw) std::reverse(hit.begin(), hit.end());
  for (const SupportRay* s : hit) {
    a.crossings.push_back({s->ray, s->wall, crossing_sign(s->wall, s->ray, orientation)});
  }
  return a;
}

PathAutomorphism loop_product(const ScatteringDiagram& d, Exponent base) {
  if (base.is_zero() || d.on_support(base)) {
    throw OnWallError("basepoint " + to_string(base) + " lies on a wall");
  }
  std::vector<const SupportRay*> hit;
  for (const auto& s : d.rays()) hit.push_back(&s);
  std::sort(hit.begin(), hit.end(), [&](const SupportRay* x, const SupportRay* y) {
    return rel_angle_less(base, x->ray, y->ray);
  });
  PathAutomorphism a;
  for (const SupportRay* s : hit) {
    a.crossings.push_back({s->ray, s->wall, crossing_sign(s->wall, s->ray, Orientation::Counterclockwise)});
  }
  return a;
}

Series apply_path(const PathAutomorphism& a, const Series& f) {
  Series g = f;
  for (const auto& x : a.crossings) g = crossing_apply(x.wall, x.sign, g);
  return g;
}

ScatteringDiagram complete(const ScatteringDiagram& d) {
  const std::int64_t k = d.cutoff();
  std::vector<Wall> walls = d.walls();

  for (std::int64_t n = 1; n <= k; ++n) {
    const ScatteringDiagram current(d.b(), d.c(), k, walls);
    const PathAutomorphism loop = loop_product(current, chambers(current).front().representative);
    const Series gx = Series::monomial({1, 0}, n + 1);
    const Series gy = Series::monomial({0, 1}, n + 1);
    const Series lx = apply_path(loop, gx) - gx;
    const Series ly = apply_path(loop, gy) - gy;

    // First-order deviation a * omega(m0, .) on z^{m0}-multiples of x and y.
    std::map<Exponent, std::pair<Integer, Integer>, GradedOrder> dev;
    auto collect = [&](const Series& s, Exponent gen, bool is_x) {
      for (const auto& [e, coeff] : s.terms()) {
        const Exponent m0 = e - gen;
        if (m0.degree() != n) {
          throw ConsistencyError("loop deviation z^" + to_string(e) + " at relative degree " +
                                 std::to_string(m0.degree()) + " while solving degree " +
                                 std::to_string(n));
        }
        auto& slot = dev[m0];
        (is_x ? slot.first : slot.second) = coeff;
      }
    };
    collect(lx, {1, 0}, true);
    collect(ly, {0, 1}, false);

    for (const auto& [m0, dxy] : dev) {
      const auto& [dx, dy] = dxy;
      if (!in_monoid(m0) || m0.m1 == 0 || m0.m2 == 0) {
        throw ConsistencyError("deviation in direction " + to_string(m0) + " cannot be cancelled by a ray");
      }
      const std::int64_t g = gcd_of(m0);
      const Exponent u = primitive(m0);
      if (dx * m0.m1 + dy * m0.m2 != 0 || !mpz_divisible_ui_p(dx.get_mpz_t(), u.m2)) {
        throw ConsistencyError("deviation at " + to_string(m0) + " is not a ray correction");
      }
      const Integer cc = dx / u.m2;
      Coeffs factor(static_cast<std::size_t>(g), 0);
      factor.back() = cc;
      auto it = std::find_if(walls.begin(), walls.end(), [&](const Wall& w) {
        return w.kind == SupportKind::Ray && w.direction == u;
      });
      if (it == walls.end()) {
        walls.push_back({SupportKind::Ray, u, factor, k});
      } else {
        it->coeffs = merge_functions(it->coeffs, factor, it->max_index());
      }
    }
  }
  return ScatteringDiagram(d.b(), d.c(), k, std::move(walls));
}

ConsistencyReport check_consistency(const ScatteringDiagram& d, unsigned jobs) {
  ConsistencyReport report;
  report.cutoff = d.cutoff();
  const PathAutomorphism loop = loop_product(d, chambers(d).front().representative);
  const std::vector<Exponent> gens{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  auto devs = parallel_map(gens.size(), jobs, [&](std::size_t i) -> std::optional<LoopDeviation> {
    const Series g = Series::monomial(gens[i], d.cutoff());
    const Series diff = apply_path(loop, g) - g;
    const auto lead = diff.leading_term();
    if (!lead) return std::nullopt;
    return LoopDeviation{gens[i], lead->first.degree() - gens[i].degree(), lead->first, lead->second};
  });
  for (auto& dv : devs) {
    if (dv && (!report.deviation || dv->degree < report.deviation->degree)) report.deviation = dv;
  }
  report.pass = !report.deviation.has_value();
  return report;
}

WallPositivityReport check_wall_positivity(const ScatteringDiagram& d) {
  WallPositivityReport report;
  report.cutoff = d.cutoff();
  for (std::size_t i = 0; i < d.walls().size() && report.pass; ++i) {
    const Wall& w = d.walls()[i];
    for (std::size_t j = 0; j < w.coeffs.size(); ++j) {
      if (w.coeffs[j] < 0) {
        report.pass = false;
        report.witness = WallPositivityReport::Witness{i, w.direction, static_cast<std::int64_t>(j + 1), w.coeffs[j]};
        break;
      }
    }
  }
  return report;
}

bool in_limiting_cone(std::int64_t b, std::int64_t c, Exponent direction) {
  if (b * c <= 4) return false;
  const __int128 p = -direction.m1, q = -direction.m2;
  if (p <= 0 || q <= 0) return false;
  return c * p * p - static_cast<__int128>(b) * c * p * q + b * q * q < 0;
}

std::vector<Chamber> chambers(const ScatteringDiagram& d) {
  std::vector<Exponent> dirs;
  for (const auto& s : d.rays()) dirs.push_back(s.ray);
  dirs = sorted_rays(std::move(dirs));

  std::vector<Chamber> out;
  if (dirs.empty()) {
    out.push_back({{1, 0}, {1, 0}, {1, 1}, true});
    return out;
  }
  const std::size_t n = dirs.size();
  for (std::size_t i = 0; i < n; ++i) {
    Chamber ch;
    ch.low_ray = dirs[i];
    ch.high_ray = dirs[(i + 1) % n];
    const std::int64_t w = omega(ch.low_ray, ch.high_ray);
    if (n == 1) {
      ch.representative = -ch.low_ray;
    } else if (w > 0) {
      ch.representative = primitive(ch.low_ray + ch.high_ray);
    } else if (w == 0) {
      ch.representative = rotate_ccw(ch.low_ray);
    } else {
      ch.representative = primitive(-(ch.low_ray + ch.high_ray));
    }
    ch.cutoff_dependent = in_limiting_cone(d.b(), d.c(), ch.representative);
    out.push_back(ch);
  }
  return out;
}

std::size_t locate_chamber(const std::vector<Chamber>& cs, Exponent direction) {
  if (cs.size() == 1) return 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (same_ray(direction, cs[i].low_ray) ||
        strictly_inside_ccw(cs[i].low_ray, cs[i].high_ray, direction)) {
      return i;
    }
  }
  throw ParameterError("direction " + to_string(direction) + " is in no chamber");
}

}  // namespace thetaforge
