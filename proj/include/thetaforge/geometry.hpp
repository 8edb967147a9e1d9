#pragma once

// Exact angular bookkeeping for integer directions in M_R = R^2.

#include <vector>

#include "thetaforge/series.hpp"

namespace thetaforge {

/// 0 for directions with angle in [0, pi), 1 for [pi, 2pi).
int half_plane(Exponent v);

/// Strict ccw angle order on nonzero directions, starting at angle 0.
bool angle_less(Exponent a, Exponent b);

/// Same ray through the origin.
bool same_ray(Exponent a, Exponent b);

/// v rotated by +90 degrees.
constexpr Exponent rotate_ccw(Exponent v) { return {-v.m2, v.m1}; }

/// True iff `v` lies strictly inside the ccw sweep from `from` to `to`.
/// A sweep with from == to covers the full turn minus that ray.
bool strictly_inside_ccw(Exponent from, Exponent to, Exponent v);

/// Sorts and deduplicates rays by angle (all entries reduced to primitive).
std::vector<Exponent> sorted_rays(std::vector<Exponent> rays);

}  // namespace thetaforge
