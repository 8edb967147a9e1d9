#include "thetaforge/geometry.hpp"

#include <algorithm>

namespace thetaforge {

int half_plane(Exponent v) { return (v.m2 < 0 || (v.m2 == 0 && v.m1 < 0)) ? 1 : 0; }

bool angle_less(Exponent a, Exponent b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return omega(a, b) > 0;
}

bool same_ray(Exponent a, Exponent b) {
  return omega(a, b) == 0 && (a.m1 * b.m1 + a.m2 * b.m2) > 0;
}

bool strictly_inside_ccw(Exponent from, Exponent to, Exponent v) {
  if (same_ray(v, from) || same_ray(v, to)) return false;
  if (same_ray(from, to)) return true;
  // Rotate the frame so that `from` sits at angle 0.
  auto rel = [&](Exponent w) {
    return Exponent{from.m1 * w.m1 + from.m2 * w.m2, omega(from, w)};
  };
  return angle_less(rel(v), rel(to));
}

std::vector<Exponent> sorted_rays(std::vector<Exponent> rays) {
  for (auto& r : rays) r = primitive(r);
  std::sort(rays.begin(), rays.end(), angle_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

}  // namespace thetaforge
