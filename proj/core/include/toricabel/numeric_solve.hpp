#pragma once

// Univariate roots, square bivariate systems by resultant elimination, and
// transversal residue sums.

#include "toricabel/cpoly.hpp"

#include <vector>

namespace toricabel {

struct SolveConfig {
  double tol = 1e-10;
  double cluster = 1e-7;
  double singular = 1e-8;
  int max_iter = 1000;
};

struct Root {
  Complex value;
  /// Size of the cluster this root belongs to; > 1 flags a multiple root.
  int multiplicity = 1;
};

/// All deg(p) roots (repeated per multiplicity).  Throws InputError for the
/// zero or a constant polynomial, NumericError on non-convergence.
std::vector<Root> univariate_roots(const CPoly1& p, const SolveConfig& cfg = {});

struct SolutionSet {
  std::vector<CVec> points;
  /// max_j |f_j(p)|
  std::vector<double> residuals;
  std::vector<Complex> jacobians;
  /// Ambiguous pairing or residual above tolerance.
  std::vector<bool> flagged;
  /// Variable eliminated by the resultant (0 or 1).
  std::size_t eliminated = 1;
  int resultant_degree = 0;

  std::size_t size() const { return points.size(); }
};

/// det of the Jacobian matrix of `system` at p.
Complex jacobian_det(const std::vector<CPoly>& system, const CVec& p);

/// Isolated solutions of f = g = 0 in C^2.  Throws DegenerateSystemError when
/// the resultant vanishes identically.
SolutionSet solve_bivariate(const CPoly& f, const CPoly& g, const SolveConfig& cfg = {});

/// sum_p h(p) / J(p).  Throws NonTransversalError if some |J(p)| is below
/// cfg.singular times the product of the gradient norms.
Complex residue_sum(const CPoly& h, const std::vector<CPoly>& system, const SolutionSet& sols,
                    const SolveConfig& cfg = {});

}  // namespace toricabel
