#include "toricabel/abel_trace.hpp"
#include "toricabel/errors.hpp"
#include "toricabel/rational_fit.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace toricabel;

namespace {

CVec sample(const CVec& nodes, Complex (*f)(Complex)) {
  CVec v;
  for (const auto& a : nodes) v.push_back(f(a));
  return v;
}

Complex pole(Complex a) { return 1.0 / (1.0 + a); }
Complex quadratic_ratio(Complex a) { return (a * a - 2.0 * a + 3.0) / (a - Complex(0.2, 2.5)); }
Complex expo(Complex a) { return std::exp(a); }

}  // namespace

TEST(RationalFit, ExactPole) {
  const CVec nodes = radial_grid(Complex(0.1, 0.2), 0.6, 16);
  const CVec v = sample(nodes, pole);
  const RationalityResult r = rationality_test(nodes, v, 0, 1, 1e-10);
  EXPECT_TRUE(r.is_rational);
  EXPECT_LT(r.heldout, 1e-12);
  EXPECT_NEAR(std::abs(r.fit.eval(Complex(0.3, -0.1)) - pole(Complex(0.3, -0.1))), 0, 1e-12);
}

TEST(RationalFit, MinimalDegreesFound) {
  const CVec nodes = radial_grid(0, 1, 24);
  const RationalFit f = fit_minimal_rational(nodes, sample(nodes, quadratic_ratio), 4, 4, 1e-9);
  EXPECT_EQ(f.num_degree(), 2);
  EXPECT_EQ(f.den_degree(), 1);
  EXPECT_LT(f.heldout, 1e-9);
  EXPECT_LT(f.residual, 1e-9);
  const Complex probe(-0.4, 0.3);
  EXPECT_NEAR(std::abs(f.eval(probe) - quadratic_ratio(probe)), 0, 1e-9);
}

TEST(RationalFit, PolynomialHasConstantDenominator) {
  const CVec nodes = radial_grid(0, 1, 12);
  CVec v;
  for (const auto& a : nodes) v.push_back(2.0 + a * a * a);
  const RationalFit f = fit_minimal_rational(nodes, v, 4, 4, 1e-10);
  EXPECT_EQ(f.num_degree() + f.den_degree(), 3);
  EXPECT_EQ(f.den_degree(), 0);
}

TEST(RationalFit, ExponentialIsNotRationalOnWideNodes) {
  // On the unit disc exp is within 1e-7 of a (4,4) fit; radius 5 separates it.
  const CVec nodes = radial_grid(0, 5, 12);
  const CVec v = sample(nodes, expo);
  double best = 1e300;
  for (int dn = 0; dn <= 4; ++dn)
    for (int dd = 0; dd <= 4; ++dd) {
      const RationalityResult r = rationality_test(nodes, v, dn, dd, 1e-7);
      EXPECT_FALSE(r.is_rational) << dn << "," << dd;
      best = std::min(best, r.heldout);
    }
  EXPECT_GE(best, 1e-2);
}

TEST(RationalFit, DenserGridDoesNotHurtTruePositives) {
  double previous = 1e300;
  for (std::size_t count : {12u, 24u, 48u}) {
    const CVec nodes = radial_grid(Complex(0.3, 0), 0.8, count);
    const RationalityResult r = rationality_test(nodes, sample(nodes, quadratic_ratio), 2, 1, 1e-9);
    EXPECT_TRUE(r.is_rational);
    EXPECT_LE(r.heldout, std::max(previous, 1e-13));
    previous = r.heldout;
  }
}

TEST(RationalFit, InputValidation) {
  const CVec nodes = radial_grid(0, 1, 3);
  EXPECT_THROW(fit_rational(nodes, sample(nodes, pole), 2, 1), InputError);
  EXPECT_THROW(fit_rational(nodes, CVec(2), 0, 0), InputError);
  EXPECT_THROW(rationality_test(nodes, sample(nodes, pole), 0, 0, 1e-8), InputError);
}

TEST(SharedFit, CommonDenominatorRecovered) {
  // (a + 2) / q and (a^2 - i) / q with q = (a - 1.5)(a + 0.5i - 2).
  const CVec nodes = radial_grid(0, 1, 24);
  auto q = [](Complex a) { return (a - 1.5) * (a + Complex(-2, 0.5)); };
  std::vector<CVec> values(2);
  for (const auto& a : nodes) {
    values[0].push_back((a + 2.0) / q(a));
    values[1].push_back((a * a - Complex(0, 1)) / q(a));
  }
  const std::vector<RationalFit> fits = fit_minimal_shared(nodes, values, 4, 4, 1e-9);
  ASSERT_EQ(fits.size(), 2u);
  EXPECT_EQ(fits[0].den, fits[1].den);
  EXPECT_EQ(fits[0].den_degree(), 2);
  EXPECT_EQ(fits[0].num_degree(), 1);
  EXPECT_EQ(fits[1].num_degree(), 2);
  const Complex probe(0.2, -0.7);
  EXPECT_NEAR(std::abs(fits[1].eval(probe) - (probe * probe - Complex(0, 1)) / q(probe)), 0, 1e-10);
}

TEST(SharedFit, PolynomialsShareConstantDenominator) {
  const CVec nodes = radial_grid(0, 1, 16);
  std::vector<CVec> values(2);
  for (const auto& a : nodes) {
    values[0].push_back(1.0 + a);
    values[1].push_back(a * a * a);
  }
  const std::vector<RationalFit> fits = fit_minimal_shared(nodes, values, 4, 4, 1e-10);
  ASSERT_EQ(fits.size(), 2u);
  EXPECT_EQ(fits[0].den_degree(), 0);
  EXPECT_EQ(fits[1].num_degree(), 3);
}

TEST(SharedFit, NonRationalGivesNothing) {
  const CVec nodes = radial_grid(0, 5, 16);
  std::vector<CVec> values{sample(nodes, expo)};
  EXPECT_TRUE(fit_minimal_shared(nodes, values, 3, 3, 1e-7).empty());
  EXPECT_THROW(fit_shared_denominator(nodes, values, {1, 1}, 1), InputError);
}

TEST(RadialGrid, Rings) {
  const CVec g = radial_grid(Complex(1, 1), 2, 10);
  ASSERT_EQ(g.size(), 10u);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = std::abs(g[i] - Complex(1, 1));
    EXPECT_TRUE(std::abs(r - 2) < 1e-12 || std::abs(r - 1.2) < 1e-12) << r;
  }
}
