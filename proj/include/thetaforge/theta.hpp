#pragma once

// Theta functions on a consistent rank-2 scattering diagram: broken lines,
// the localizations iota_Q, transport between chambers, theta-basis
// expansion and the positivity / atomicity verdicts built on them.
//
// A basepoint Q is any integer direction off the support; chamber
// representatives from chambers() are the canonical choice.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetaforge/scatter.hpp"
#include "thetaforge/series.hpp"

namespace thetaforge {

struct BrokenLine {
  struct Bend {
    Exponent ray;        ///< support half-line where the bend happens
    Exponent direction;  ///< m0 of the wall
    std::int64_t term = 0;  ///< j: the bend picks the z^{j m0} term of f^{|omega|}
    Integer factor;
  };

  Exponent initial;
  Exponent endpoint;
  std::vector<Bend> bends;  ///< in order of travel
  Integer coefficient;
  Exponent exponent;
};

struct ThetaExpansion {
  std::map<Exponent, Integer, GradedOrder> coeffs;  ///< sum a_m theta_m, no zero entries
  std::int64_t cutoff = 0;
  std::optional<Exponent> base;

  void add(Exponent m, const Integer& a);
  bool operator==(const ThetaExpansion& o) const { return coeffs == o.coeffs; }
};

struct PositivityVerdict {
  enum class Kind { Positive, NegativeWitness, Inconclusive };
  struct Witness {
    std::size_t chamber = 0;  ///< index into the sampled basepoints
    Exponent basepoint;
    Exponent exponent;
    Integer coefficient;
  };

  Kind kind = Kind::Positive;
  std::optional<Witness> witness;
  std::int64_t cutoff = 0;
  std::string atlas = "scattering atlas";
  std::string note;
};

struct AtomicityVerdict {
  enum class Kind { Atomic, Decomposable, NotUniversallyPositive };

  Kind kind = Kind::Atomic;
  std::optional<std::pair<ThetaExpansion, ThetaExpansion>> certificate;
  PositivityVerdict positivity;
};

struct TransitionWitness {
  Exponent exponent;
  Series numerator;    ///< z^m * N
  Series denominator;  ///< D, with the transported monomial equal to numerator / denominator
  bool pass = true;
};

struct TransitionReport {
  bool pass = true;
  std::int64_t cutoff = 0;
  Exponent from;
  Exponent to;
  std::vector<TransitionWitness> witnesses;
};

class Atlas {
 public:
  explicit Atlas(ScatteringDiagram d, unsigned jobs = 1);

  const ScatteringDiagram& diagram() const { return d_; }
  const std::vector<Chamber>& chambers() const { return chambers_; }
  std::vector<Chamber>& chambers() { return chambers_; }
  unsigned jobs() const { return jobs_; }

  /// Degree up to which iota_Q(theta_p) is known: k + min(0, delta(p)).
  std::int64_t theta_cutoff(Exponent p) const;

  /// Representative of the chamber whose closure contains R>=0 p, taken on
  /// the counterclockwise side of that ray.
  Exponent adjacent_basepoint(Exponent p) const;
  std::size_t adjacent_chamber(Exponent p) const;

  std::vector<BrokenLine> broken_lines(Exponent p, Exponent q) const;
  Series theta_local(Exponent p, Exponent q) const;
  Series localize(const ThetaExpansion& combo, Exponent q) const;
  Series transport(const Series& f, Exponent from, Exponent to) const;
  ThetaExpansion expand(const Series& f, Exponent q0) const;

  /// Semi-decision: Positive means no negative coefficient up to the cutoff
  /// at any sampled basepoint.
  PositivityVerdict check_universal_positivity(const ThetaExpansion& combo) const;
  /// Same test restricted to the given basepoints.
  PositivityVerdict check_positivity_at(const ThetaExpansion& combo,
                                        const std::vector<Exponent>& basepoints) const;
  AtomicityVerdict check_atomicity(const ThetaExpansion& combo) const;
  ThetaExpansion structure_constants(Exponent p, Exponent q,
                                     std::optional<Exponent> q0 = std::nullopt) const;
  TransitionReport check_transition_positivity(Exponent from, Exponent to,
                                               const std::vector<Exponent>& exponents) const;

  /// Chamber representatives followed by the extra limiting-cone samples.
  std::vector<Exponent> positivity_samples() const;

 private:
  PathAutomorphism shorter_path(Exponent from, Exponent to) const;
  void require_off_support(Exponent q) const;

  ScatteringDiagram d_;
  std::vector<Chamber> chambers_;
  std::vector<Exponent> cone_samples_;
  unsigned jobs_;

  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>>,
                   Series>
      cache_;
};

std::string to_string(PositivityVerdict::Kind k);
std::string to_string(AtomicityVerdict::Kind k);

}  // namespace thetaforge
