#pragma once

// Rank-2 scattering diagrams in M_R = R^2.
//
// A wall with direction m0 (primitive, in P) carries f = 1 + sum_j c_j z^{j m0}.
// Crossing it acts by z^m -> z^m f^{sign * omega(m0, m)}, where sign = +1
// when the motion passes from the side omega(m0, .) > 0 to the side
// omega(m0, .) < 0. Under this rule the consistent completion puts every
// added wall on the outgoing half-line R>=0 * (-m0); a full line occupies
// both R>=0 * m0 and R>=0 * (-m0).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetaforge/series.hpp"

namespace thetaforge {

enum class SupportKind { Line, Ray };

struct Wall {
  SupportKind kind = SupportKind::Ray;
  Exponent direction;           ///< m0
  std::vector<Integer> coeffs;  ///< c_1 .. c_J
  std::int64_t cutoff = 0;      ///< degree up to which f is known

  /// f == 1 up to the cutoff.
  bool trivial() const;
  /// Largest j with j * delta(m0) <= cutoff.
  std::int64_t max_index() const;
  Series function() const;
  /// The half-lines making up the support.
  std::vector<Exponent> support() const;
  /// Coefficients a_0..a_J of f^e as a series in z^{m0}.
  std::vector<Integer> power_coeffs(std::int64_t e) const;
};

/// A nontrivial half-line of Supp(D) with the combined function of every
/// wall lying on it.
struct SupportRay {
  Exponent ray;
  Wall wall;
  std::vector<std::size_t> sources;  ///< indices into ScatteringDiagram::walls()
};

class ScatteringDiagram {
 public:
  /// Validates the walls, truncates them to `cutoff`, merges walls with the
  /// same support and sorts them by angle. Throws ParameterError.
  ScatteringDiagram(std::int64_t b, std::int64_t c, std::int64_t cutoff, std::vector<Wall> walls);

  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t cutoff() const { return cutoff_; }
  const std::vector<Wall>& walls() const { return walls_; }
  /// Nontrivial support half-lines in ccw order from angle 0.
  const std::vector<SupportRay>& rays() const { return rays_; }

  bool on_support(Exponent direction) const;
  /// Same walls, each truncated to a lower cutoff.
  ScatteringDiagram truncated(std::int64_t cutoff) const;

 private:
  std::int64_t b_;
  std::int64_t c_;
  std::int64_t cutoff_;
  std::vector<Wall> walls_;
  std::vector<SupportRay> rays_;
};

/// Lines R(1,0) with (1+x)^c and R(0,1) with (1+y)^b.
ScatteringDiagram initial_diagram(std::int64_t b, std::int64_t c, std::int64_t cutoff);

/// Order-by-order completion to consistency modulo the cutoff.
ScatteringDiagram complete(const ScatteringDiagram& d);

/// The wall-crossing automorphism z^m -> z^m f^{sign * omega(m0, m)}.
Series crossing_apply(const Wall& w, int sign, const Series& f);

enum class Orientation { Counterclockwise, Clockwise };

struct Crossing {
  Exponent ray;
  Wall wall;
  int sign = 1;
};

struct PathAutomorphism {
  std::vector<Crossing> crossings;

  bool empty() const { return crossings.empty(); }
  PathAutomorphism reversed() const;
};

/// Crossings of every half-line strictly between `start` and `end` in the
/// given rotation sense. Throws OnWallError if a basepoint is on the support.
PathAutomorphism path_product(const ScatteringDiagram& d, Exponent start, Exponent end,
                              Orientation orientation);

/// One full counterclockwise turn starting and ending at `base`.
PathAutomorphism loop_product(const ScatteringDiagram& d, Exponent base);

/// Applies the crossings left to right.
Series apply_path(const PathAutomorphism& a, const Series& f);

struct LoopDeviation {
  Exponent generator;
  std::int64_t degree = 0;  ///< degree of the deviation relative to the generator
  Exponent exponent;
  Integer coefficient;
};

struct ConsistencyReport {
  bool pass = true;
  std::int64_t cutoff = 0;
  std::optional<LoopDeviation> deviation;
};

/// Full-loop product on z^{+-(1,0)}, z^{(0,+-1)}.
ConsistencyReport check_consistency(const ScatteringDiagram& d, unsigned jobs = 1);

struct WallPositivityReport {
  bool pass = true;
  std::int64_t cutoff = 0;
  struct Witness {
    std::size_t wall = 0;
    Exponent direction;
    std::int64_t index = 0;  ///< j in c_j z^{j m0}
    Integer coefficient;
  };
  std::optional<Witness> witness;
};

WallPositivityReport check_wall_positivity(const ScatteringDiagram& d);

struct Chamber {
  Exponent low_ray;
  Exponent high_ray;
  Exponent representative;
  bool whole_plane = false;
  bool is_cluster = false;
  /// Inside the limiting cone of a wild diagram (bc >= 5): the chamber
  /// structure there changes with the cutoff.
  bool cutoff_dependent = false;
};

/// Connected components of M_R minus the support, in ccw order of low_ray.
std::vector<Chamber> chambers(const ScatteringDiagram& d);

/// Index of the chamber containing `direction`; a direction on a boundary
/// ray resolves to the chamber on its counterclockwise side.
std::size_t locate_chamber(const std::vector<Chamber>& cs, Exponent direction);

/// True iff -direction lies strictly inside the limiting cone of the
/// (b, c) diagram, which is nonempty only when bc > 4.
bool in_limiting_cone(std::int64_t b, std::int64_t c, Exponent direction);

}  // namespace thetaforge
