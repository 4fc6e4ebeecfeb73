#pragma once

// Linearized Pade least-squares fits of sampled functions of one complex variable.

#include "toricabel/cpoly.hpp"

namespace toricabel {

/// p(u) / q(u) with u = (a - center) / scale.
struct RationalFit {
  CVec num;
  CVec den;
  Complex center = 0;
  double scale = 1;
  /// Max abs error on the fitted nodes relative to max |value|.
  double residual = 0;
  /// Same on the held-out nodes (0 when none were held out).
  double heldout = 0;

  int num_degree() const { return static_cast<int>(num.size()) - 1; }
  int den_degree() const { return static_cast<int>(den.size()) - 1; }
  Complex eval(Complex a) const;
  Complex eval_num(Complex a) const;
  Complex eval_den(Complex a) const;
};

/// Fits on all nodes.  Throws InputError with fewer than dnum + dden + 1 nodes.
RationalFit fit_rational(const CVec& nodes, const CVec& values, int dnum, int dden);

struct RationalityResult {
  bool is_rational = false;
  RationalFit fit;
  double heldout = 0;
};

/// Fits on three of every four nodes and scores the rest.
RationalityResult rationality_test(const CVec& nodes, const CVec& values, int dnum, int dden,
                                   double tol);

/// Smallest total degree dnum + dden within the caps that has a split with
/// held-out residual <= tol, raised further while each step cuts the held-out
/// residual 100-fold.  Within a degree the split with the smallest held-out
/// residual wins.  Without any split within tol, the best candidate overall.
/// The chosen degrees are refit on all nodes.
RationalFit fit_minimal_rational(const CVec& nodes, const CVec& values, int cap_num, int cap_den,
                                 double tol);

/// Fits values[j] as p_j / q with one denominator q of degree dden and
/// numerator degrees dnums[j], in the frame of `nodes`.  Each block is weighted
/// by its largest value.  Held-out residuals come from a fit on three of every
/// four nodes; the returned fits use all nodes.
std::vector<RationalFit> fit_shared_denominator(const CVec& nodes, const std::vector<CVec>& values,
                                                const std::vector<int>& dnums, int dden);

/// Smallest shared denominator degree within cap_den whose fit with all
/// numerators at cap_num has max held-out residual <= tol, raised under the
/// same 100-fold rule as fit_minimal_rational.  Empty when no degree is within
/// tol.
std::vector<RationalFit> fit_minimal_shared(const CVec& nodes, const std::vector<CVec>& values, int cap_num,
                                            int cap_den, double tol);

}  // namespace toricabel
