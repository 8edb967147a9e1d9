#pragma once

// Rank-2 cluster algebras with exchange exponents (b, c).
//
// The exchange law is the one induced by the initial walls (1+x)^c on the
// x-axis and (1+y)^b on the y-axis:
//   x1 * x1' = (1 + x2)^b,   x2 * x2' = (1 + x1)^c.
// Along the bi-infinite sequence a_1 = x1, a_2 = x2 this reads
//   a_{n-1} a_{n+1} = (1 + a_n)^{e_n},  e_n = b for even n, c for odd n,
// and seed S_j holds a_{j+1}, a_{j+2} (odd indices in slot 1).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetaforge/series.hpp"
#include "thetaforge/theta.hpp"

namespace thetaforge {

struct ClusterVariable {
  Series numerator;    ///< polynomial with non-negative coefficients
  Series denominator;  ///< monomial
  Exponent gvec;

  /// numerator / denominator as a Laurent polynomial.
  Series laurent() const;
};

struct Seed {
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::array<ClusterVariable, 2> vars;
  std::vector<int> word;  ///< mutation directions applied to the initial seed

  std::array<Exponent, 2> gvecs() const { return {vars[0].gvec, vars[1].gvec}; }
};

/// Same cluster variables and g-vectors (the mutation word is ignored).
bool same_cluster(const Seed& a, const Seed& b);

Seed initial_seed(std::int64_t b, std::int64_t c);

/// dir is 1 or 2. Throws ParameterError otherwise.
Seed mutate(const Seed& s, int dir);

/// Componentwise minimum of (0, v).
Exponent cmin0(Exponent v);

struct ClusterVariableEntry {
  Series laurent;
  Exponent gvec;
  std::int64_t index = 0;  ///< n in the sequence a_n
};

/// Distinct cluster variables of the seeds S_j with |j| <= depth, in the order
/// a_1, a_2, a_3, a_0, a_4, a_{-1}, ... With `skip_inverses`, monomials whose
/// inverse is already listed are left out (this only happens when b = 0 or c = 0).
std::vector<ClusterVariableEntry> cluster_variables(std::int64_t b, std::int64_t c, std::int64_t depth,
                                                    bool skip_inverses = true);

/// g-vectors g_n for n in [lo, hi] by the tropical exchange rule.
std::vector<Exponent> gvector_range(std::int64_t b, std::int64_t c, std::int64_t lo, std::int64_t hi);

struct ClusterChamber {
  Exponent low;   ///< cone(low, high) with omega(low, high) > 0
  Exponent high;
  std::int64_t seed = 0;  ///< j of seed S_j
};

/// g-vector cones of the seeds S_j, |j| <= depth, without duplicates, in
/// the order S_0, S_1, S_{-1}, S_2, ...
std::vector<ClusterChamber> cluster_chambers(std::int64_t b, std::int64_t c, std::int64_t depth);

/// Strictly inside cone(low, high).
bool in_cone_interior(const ClusterChamber& ch, Exponent v);

struct LaurentPositivityReport {
  bool pass = true;
  std::int64_t depth = 0;
  std::size_t checked = 0;
  struct Witness {
    std::int64_t seed = 0;
    std::int64_t variable = 0;
    Exponent exponent;
    Integer coefficient;
    std::string reason;
  };
  std::optional<Witness> witness;
};

/// Every variable a_t of a seed within `depth` is expanded in the variables
/// of every seed within `depth` and checked for non-negative coefficients.
LaurentPositivityReport check_laurent_positivity(std::int64_t b, std::int64_t c, std::int64_t depth);

struct AgreementEntry {
  Exponent gvec;
  Series variable;
  Series theta;
  bool match = false;
};

struct ClusterAgreementReport {
  bool pass = true;
  std::int64_t cutoff = 0;
  std::int64_t depth = 0;
  Exponent basepoint;
  std::vector<AgreementEntry> entries;
  std::vector<std::size_t> cluster_chambers;  ///< scattering chambers marked is_cluster
};

/// Compares theta_local(g, Q0) at the initial chamber with each cluster
/// variable and marks the scattering chambers inside matching seed cones.
ClusterAgreementReport check_cluster_theta_agreement(Atlas& atlas, std::int64_t depth);

/// Positivity test restricted to scattering chambers inside cluster cones.
/// Exploratory: labelled "cluster atlas, depth-limited".
PositivityVerdict cluster_atlas_positivity(const Atlas& atlas, const ThetaExpansion& combo,
                                           std::int64_t depth);

}  // namespace thetaforge
