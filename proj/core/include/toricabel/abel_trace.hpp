#pragma once

// Traces of a form on a hypersurface V along the family of sections of a line
// bundle, and reconstruction of V and the form from trace data.  Surfaces
// (n = 2) with a rank-1 bundle.

#include "toricabel/bundles.hpp"
#include "toricabel/numeric_solve.hpp"
#include "toricabel/rational_fit.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace toricabel {

/// V = {f = 0} in the chart of `sigma`; exponents are chart exponents.
struct CurveData {
  CPoly f;
  HPolytope newton;
};

/// phi ^ df = h dx_1 ^ dx_2.
struct FormData {
  CPoly h;
};

/// Sections of a line bundle written in one chart.  The a_0 slot is the
/// coefficient of the lattice point s_sigma (the constant monomial).
struct LineFamily {
  Cone sigma;
  std::vector<Exponent> exponents;
  std::size_t zero_index = 0;

  /// Throws DegeneracyError if the constant monomial is missing.
  LineFamily() = default;
  LineFamily(const LineBundle& l, const Cone& sigma);
  CPoly line(const Section& a) const;
  /// l'(x) = -sum_{m != 0} a_m x^m.
  CPoly l_prime(const Section& a) const;
  std::size_t size() const { return exponents.size(); }
};

struct TraceConfig {
  SolveConfig solve;
  /// Hankel matrices with sigma_min / sigma_max below this are singular.
  double hankel_rcond = 1e-12;
  /// Minimum pairwise separation of the y_j values.
  double separation = 1e-6;
};

/// Throws NonTransversalError when a Jacobian is near zero.
SolutionSet intersection_points(const CurveData& curve, const LineFamily& fam, const Section& a,
                                const TraceConfig& cfg = {});

struct PowerTraces {
  CVec w;
  CVec t;
};

/// w_k = sum y^k h/J and t_k = sum y^k / J for k = 0..K, y = c . p.
PowerTraces power_traces(const CurveData& curve, const FormData& form, const LineFamily& fam,
                         const Section& a, const CVec& c, std::size_t K,
                         const TraceConfig& cfg = {});
PowerTraces power_traces(const CurveData& curve, const FormData& form, const LineFamily& fam,
                         const SolutionSet& sols, const Section& a, const CVec& c, std::size_t K);

/// v_m = sum p^m h/J for each requested exponent.
CVec trace_form_coefficients(const CurveData& curve, const FormData& form, const LineFamily& fam,
                             const Section& a, const std::vector<Exponent>& ms,
                             const TraceConfig& cfg = {});

struct TraceNode {
  Complex a0;
  bool kept = false;
  std::string note;
  std::size_t count = 0;
  CVec w;
  bool singular = false;
  double rcond = 0;
  /// Solution of M sigma = -(w_N..w_{2N-1}).
  CVec sigma;
  CVec y;
};

struct TraceDataset {
  LineFamily family;
  /// Coefficients with the a_0 slot ignored.
  Section a_prime;
  CVec c;
  std::size_t N = 0;
  std::vector<TraceNode> nodes;
  std::vector<std::string> log;

  Section section_at(Complex a0) const;
  std::size_t kept_count() const;
  std::size_t singular_count() const;
};

/// Evaluates the traces on every grid node.  Nodes whose count differs from
/// N or that are non-transversal are dropped and logged.
TraceDataset build_dataset(const CurveData& curve, const FormData& form, const LineFamily& fam,
                           const Section& a_prime, const CVec& c, const CVec& grid, std::size_t N,
                           const TraceConfig& cfg = {});

/// Radial grid: alternating rings of radius 0.6 r and r around `center`.
CVec radial_grid(Complex center, double radius, std::size_t count);

/// max over probe nodes of |d_{a_m} v_{m'} - d_{a_0} v_{m+m'}| by central differences.
/// Throws InputError if m is not a non-constant exponent of the family.
double propagation_check(const CurveData& curve, const FormData& form, const TraceDataset& ds,
                         const Exponent& m, const Exponent& m_prime, double step,
                         std::size_t probes = 4, const TraceConfig& cfg = {});

struct FitSet {
  std::vector<RationalFit> fits;
  double max_heldout = 0;
  double max_residual = 0;
};

/// Rational fits of sigma_0..sigma_{N-1} in a_0.  Throws DegenerateFormError
/// when more than 20% of the nodes have a singular trace matrix.
FitSet fit_trace_matrix(const TraceDataset& ds, int cap_extra = 2, double tol = 1e-7);

/// Q = D(a_0) P(l'(x), c . x) with the common denominator D cleared.
/// `cancellation` receives max|coeff Q| over the largest summand coefficient;
/// small values mean Q lost that many digits.
CPoly substitute_fits(const FitSet& fits, const LineFamily& fam, const Section& a_prime,
                      const CVec& c, double* cancellation = nullptr);

struct HypersurfaceFit {
  CPoly f_tilde;
  /// Points of {Q_A = 0} where Q_B also vanishes.
  std::vector<CVec> samples;
  double null_ratio = 0;
};

/// Least-squares polynomial on the lattice points of `target` vanishing on
/// the common zeros of q_a and q_b, sampled along random lines.
HypersurfaceFit extract_hypersurface(const CPoly& q_a, const CPoly& q_b, const HPolytope& target,
                                     std::mt19937_64& rng);

struct FormFit {
  FitSet tau;
  /// h~ = num / den.
  CPoly num;
  CPoly den;
};

/// Step 2: t_k from the recovered curve, tau_j per node, rational fits in a_0,
/// then substitution a_0 -> l'(x), Y -> c . x.
FormFit reconstruct_form(const TraceDataset& ds, const CurveData& recovered, int cap_extra = 2,
                         double tol = 1e-7, const TraceConfig& cfg = {});

/// Smallest lambda-weighted relative coefficient error: min_l |g - l f| / |l f|.
double scaled_distance(const CPoly& g, const CPoly& f, Complex& lambda);

struct InversionConfig {
  TraceConfig trace;
  std::uint64_t seed = 1;
  /// 0 selects 4N + 12.
  std::size_t grid_nodes = 0;
  double grid_radius = 1.0;
  int cap_extra = 2;
  double fit_tol = 1e-7;
  /// Smallest acceptable cancellation ratio of Q before (a', c) is resampled.
  double min_cancellation = 1e-3;
  double prop_step = 1e-4;
  /// Round-trip tolerance on curve and form.
  double accept = 1e-5;
};

struct InversionReport {
  Cone sigma;
  std::size_t N = 0;
  std::size_t N_cycle = 0;
  TraceDataset dataset_a;
  TraceDataset dataset_b;
  FitSet sigma_fits;
  CPoly Q;
  CPoly f_tilde;
  Complex lambda;
  double curve_error = 0;
  double run_agreement = 0;
  FormFit form;
  double form_error = 0;
  /// Exponents probed by the propagation check.
  Exponent prop_m;
  Exponent prop_m_prime;
  double prop_discrepancy = 0;
  double prop_discrepancy_half = 0;
  bool rational = false;
  bool pass = false;
  std::vector<std::string> log;
};

/// Full round trip on hidden data.  Throws DegeneracyError if no chart
/// satisfies condition (*), DegenerateFormError if the trace matrix stays
/// singular for every (a', c) tried.
InversionReport invert(const CurveData& curve, const FormData& form, const LineBundle& l,
                       const InversionConfig& cfg);

/// First max cone satisfying condition (*), or nullopt.
std::optional<Cone> star_chart(const SplitBundle& e);

Complex random_disc(std::mt19937_64& rng);
Complex random_circle(std::mt19937_64& rng);
/// Coefficients uniform on the unit disc over the lattice points of `newton`.
CurveData random_curve(const HPolytope& newton, std::mt19937_64& rng);
/// Chart Newton polytope of a divisor class: Delta_{D,sigma}.
HPolytope chart_newton(const Fan& fan, const TDivisor& d, const Cone& sigma);
FormData random_form(const HPolytope& support, std::mt19937_64& rng);

}  // namespace toricabel
