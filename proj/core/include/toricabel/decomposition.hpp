#pragma once

// Orbital decomposition of generic E-subschemes, intersection numbers as
// mixed volumes of faces, degenerate classes and resultant multidegrees.

#include "toricabel/bundles.hpp"

#include <map>
#include <string>
#include <vector>

namespace toricabel {

struct OrbitalEntry {
  /// 0-based line-bundle indices, sorted.
  std::vector<std::size_t> I;
  Cone tau;
  /// |I| + dim tau.
  std::size_t codim = 0;
  std::string evidence;
};

struct OrbitalTable {
  /// Only the pairs with nu = 1.
  std::vector<OrbitalEntry> entries;
  /// Number of (I, tau) pairs examined.
  std::size_t pairs_examined = 0;
};

/// Sum of nu_tau [V(tau)] over cones of dimension n - dim.
struct CycleClass {
  std::size_t dim = 0;
  std::map<Cone, Integer> coeffs;
};

/// Throws InputError if a cone is missing from the fan or has the wrong dimension.
CycleClass make_cycle(const Fan& fan, std::size_t dim,
                      const std::vector<std::pair<Cone, Integer>>& terms);
/// [[ray ids], coeff] pairs.
CycleClass cycle_from_json(const Fan& fan, const nlohmann::json& doc, std::size_t dim);

OrbitalTable orbital_decomposition(const SplitBundle& e);

/// Mixed volume of the mobile faces P_i^tau in the character lattice of V(tau).
/// Throws InputError unless dim tau = n - rank(E).
Integer intersection_number(const SplitBundle& e, const Cone& tau);
/// Throws InputError if cls.dim != rank(E).
Integer cycle_intersection(const SplitBundle& e, const CycleClass& cls);
bool is_degenerate_class(const SplitBundle& e, const CycleClass& cls);

/// k - dimV when dimV < k, else 0.
int dual_codim(int dim_v, int k);

/// d_i = sum_tau nu_tau MV_{k-1}(faces of the other k-1 bundles).
/// Throws InputError unless W.dim = rank(E) - 1.
IntVec resultant_multidegree(const SplitBundle& e, const CycleClass& w);

/// (l_1 - 1, ..., l_k - 1).
std::vector<long long> parameter_space_shape(const SplitBundle& e);

/// Divisor whose polytope is the hull of `support` (a Newton polytope):
/// k_rho = -min <m, eta_rho>.
TDivisor hypersurface_class(const Fan& fan, const std::vector<IntVec>& support);
/// The same divisor as a cycle class of dimension n - 1.
CycleClass hypersurface_cycle(const Fan& fan, const std::vector<IntVec>& support);

}  // namespace toricabel
