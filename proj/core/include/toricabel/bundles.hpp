#pragma once

// T-divisors, line bundles with their chart data, and split bundles.

#include "toricabel/cpoly.hpp"
#include "toricabel/fan.hpp"
#include "toricabel/polytope.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace toricabel {

/// D = sum_rho k_rho D_rho; k is indexed by ray id.
struct TDivisor {
  IntVec k;

  bool effective() const;
  bool operator==(const TDivisor&) const = default;
};

TDivisor operator+(const TDivisor& a, const TDivisor& b);
TDivisor operator-(const TDivisor& a, const TDivisor& b);

/// Per max cone: s_{sigma,D} and Delta_{D,sigma} = phi_sigma(P_D - s).
struct ChartData {
  Cone sigma;
  ChartFrame frame;
  IntVec s;
  HPolytope delta;
};

class LineBundle {
 public:
  LineBundle(FanPtr fan, TDivisor d);

  const Fan& fan() const { return *fan_; }
  const FanPtr& fan_ptr() const { return fan_; }
  const TDivisor& divisor() const { return d_; }
  const HPolytope& polytope() const { return p_; }
  /// Aligned with fan().max_cones().
  const std::vector<ChartData>& charts() const { return charts_; }
  const ChartData& chart(const Cone& sigma) const;
  /// l(D): number of lattice points of P_D.
  std::size_t section_count() const { return p_.lattice_points().size(); }

 private:
  FanPtr fan_;
  TDivisor d_;
  HPolytope p_;
  std::vector<ChartData> charts_;
};

/// E = L_1 + ... + L_k over one fan, k <= n.
class SplitBundle {
 public:
  SplitBundle(FanPtr fan, std::vector<LineBundle> lbs);

  const Fan& fan() const { return *fan_; }
  const FanPtr& fan_ptr() const { return fan_; }
  std::size_t rank() const { return lbs_.size(); }
  const std::vector<LineBundle>& line_bundles() const { return lbs_; }
  const LineBundle& operator[](std::size_t i) const { return lbs_.at(i); }
  PolytopeFamily polytopes() const;
  TDivisor total_divisor() const;

 private:
  FanPtr fan_;
  std::vector<LineBundle> lbs_;
};

/// Coefficients a_m of one section, aligned with the lattice points of P
/// (lexicographic order).
using Section = CVec;
/// One Section per line bundle.
using SectionCoeffs = std::vector<Section>;

/// The unique s with <s, eta_rho> = -k_rho on the rays of sigma.
IntVec local_vertex(const LineBundle& l, const Cone& sigma);
IntVec local_vertex(const Fan& fan, const TDivisor& d, const Cone& sigma);

/// (D', D'') with k'_rho = -min over lattice points of P_D of <m, eta_rho>.
/// Throws NoSectionsError when P_D has no lattice points.
std::pair<TDivisor, TDivisor> mobile_fixed_split(const Fan& fan, const TDivisor& d);

bool is_globally_generated(const LineBundle& l);
/// Cones whose virtual face is empty.
std::vector<Cone> base_locus_cones(const LineBundle& l);
bool is_very_ample_bundle(const SplitBundle& e);
/// Each Delta_{i,sigma} contains 0 and the unit vectors.  Throws InputError
/// if sigma is not a max cone.
bool satisfies_condition_star(const SplitBundle& e, const Cone& sigma);

/// f^sigma: exponents phi_sigma(m - s_{sigma,D}) for each lattice point m.
CPoly chart_polynomial(const LineBundle& l, const Section& a, const Cone& sigma);

/// Bundle spec: comma-separated summands, each "H", "dH", "(a,b,...)" for a
/// product of projective lines, "[k_0,...,k_r]" for raw ray coefficients,
/// or a path to a JSON document.
SplitBundle parse_bundle(FanPtr fan, const std::string& spec);
/// {"k": {"ray_index": value, ...}} or {"k": [..]}; missing rays are 0.
TDivisor divisor_from_json(const Fan& fan, const nlohmann::json& doc);
/// A single divisor document or a list of them.
SplitBundle bundle_from_json(FanPtr fan, const nlohmann::json& doc);
/// {"coeffs": [[m_vector, re, im], ...]}; unlisted lattice points are 0.
Section section_from_json(const LineBundle& l, const nlohmann::json& doc);

}  // namespace toricabel
