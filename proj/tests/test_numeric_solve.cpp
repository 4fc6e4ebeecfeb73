#include "toricabel/errors.hpp"
#include "toricabel/numeric_solve.hpp"
#include "toricabel/polytope.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace toricabel;

namespace {

CPoly poly(std::initializer_list<std::pair<Exponent, Complex>> terms) {
  CPoly p(2);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

Complex disc(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z) <= 1 && std::abs(z) > 0.1) return z;
  }
}

CPoly random_on(const HPolytope& p, std::mt19937_64& rng) {
  CPoly out(2);
  for (const auto& m : p.lattice_points())
    out.add_term({static_cast<int>(to_int64(m[0])), static_cast<int>(to_int64(m[1]))}, disc(rng));
  return out;
}

HPolytope hull(std::vector<std::vector<long long>> pts) {
  std::vector<IntVec> v;
  for (const auto& p : pts) v.push_back(make_int_vec({p[0], p[1]}));
  return HPolytope::from_points(2, v);
}

double dist(const CVec& a, const CVec& b) { return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]); }

}  // namespace

TEST(Univariate, SimpleRoots) {
  auto r = univariate_roots(CPoly1({-1, 0, 1}));
  ASSERT_EQ(r.size(), 2u);
  std::sort(r.begin(), r.end(), [](const Root& a, const Root& b) { return a.value.real() < b.value.real(); });
  EXPECT_NEAR(std::abs(r[0].value + 1.0), 0, 1e-14);
  EXPECT_NEAR(std::abs(r[1].value - 1.0), 0, 1e-14);
  EXPECT_EQ(r[0].multiplicity, 1);
}

TEST(Univariate, ZeroRootIsFlagged) {
  const auto r = univariate_roots(CPoly1({0, 0, 0, 1}));
  ASSERT_EQ(r.size(), 3u);
  for (const auto& x : r) {
    EXPECT_EQ(x.value, Complex(0));
    EXPECT_EQ(x.multiplicity, 3);
  }
}

TEST(Univariate, DoubleRootClusters) {
  // (x - 2)^2 (x + 1)
  const auto r = univariate_roots(CPoly1({4, 0, -3, 1}));
  ASSERT_EQ(r.size(), 3u);
  int doubles = 0;
  for (const auto& x : r)
    if (x.multiplicity == 2) {
      ++doubles;
      EXPECT_NEAR(std::abs(x.value - 2.0), 0, 1e-6);
    }
  EXPECT_EQ(doubles, 2);
}

TEST(Univariate, RecoversKnownRoots) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 20; ++t) {
    CVec roots(6);
    for (auto& z : roots) z = 2.0 * disc(rng);
    CPoly1 p(CVec{1});
    for (const auto& z : roots) p = p * CPoly1({-z, 1});
    const auto got = univariate_roots(p);
    ASSERT_EQ(got.size(), 6u);
    for (const auto& z : roots) {
      double best = 1e9;
      for (const auto& g : got) best = std::min(best, std::abs(g.value - z));
      EXPECT_LT(best, 1e-9);
    }
  }
}

TEST(Univariate, RejectsConstants) {
  EXPECT_THROW(univariate_roots(CPoly1({3})), InputError);
  EXPECT_THROW(univariate_roots(CPoly1({0, 0})), InputError);
}

TEST(Bivariate, TwoLines) {
  const CPoly f = poly({{{1, 0}, 1}, {{0, 1}, 1}, {{0, 0}, -1}});
  const CPoly g = poly({{{1, 0}, 1}, {{0, 1}, -1}});
  const SolutionSet s = solve_bivariate(f, g);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_LT(dist(s.points[0], {0.5, 0.5}), 1e-12);
  EXPECT_NEAR(std::abs(s.jacobians[0] - Complex(-2)), 0, 1e-12);
  EXPECT_FALSE(s.flagged[0]);
}

TEST(Bivariate, ConicMeetsLine) {
  // x^2 + y^2 = 1 and y = 0.
  const CPoly f = poly({{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, -1}});
  const CPoly g = poly({{{0, 1}, 1}});
  const SolutionSet s = solve_bivariate(f, g);
  ASSERT_EQ(s.size(), 2u);
  for (const CVec& want : {CVec{1, 0}, CVec{-1, 0}}) {
    double best = 1e9;
    for (const auto& p : s.points) best = std::min(best, dist(p, want));
    EXPECT_LT(best, 1e-12);
  }
}

TEST(Bivariate, CommonComponentThrows) {
  const CPoly x = poly({{{1, 0}, 1}});
  const CPoly xy = poly({{{1, 1}, 1}});
  EXPECT_THROW(solve_bivariate(x, xy), DegenerateSystemError);
  EXPECT_THROW(solve_bivariate(x, CPoly(2)), DegenerateSystemError);
}

TEST(Bivariate, BernsteinCounts) {
  const HPolytope tri = hull({{0, 0}, {1, 0}, {0, 1}});
  const HPolytope tri2 = hull({{0, 0}, {2, 0}, {0, 2}});
  const HPolytope sq = hull({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const HPolytope pent = minkowski_sum(tri, sq);
  const std::vector<const HPolytope*> supports{&tri, &tri2, &sq, &pent};
  std::mt19937_64 rng(77);
  for (const auto* p : supports)
    for (const auto* q : supports) {
      const auto mv = mixed_volume(PolytopeFamily({*p, *q}), 2);
      const auto expect = static_cast<std::size_t>(to_int64(numerator(mv)));
      for (int t = 0; t < 3; ++t) {
        const CPoly f = random_on(*p, rng), g = random_on(*q, rng);
        const SolutionSet s = solve_bivariate(f, g);
        EXPECT_EQ(s.size(), expect);
        for (std::size_t i = 0; i < s.size(); ++i) {
          EXPECT_FALSE(s.flagged[i]);
          EXPECT_LT(s.residuals[i], 1e-10);
        }
      }
    }
}

TEST(Residue, Basics) {
  const CPoly x = poly({{{1, 0}, 1}}), y = poly({{{0, 1}, 1}});
  const CPoly one = poly({{{0, 0}, 1}});
  EXPECT_NEAR(std::abs(residue_sum(one, {x, y}, solve_bivariate(x, y)) - 1.0), 0, 1e-14);

  // x^2 - 1, y: J = 2x at x = +-1.
  const CPoly q = poly({{{2, 0}, 1}, {{0, 0}, -1}});
  const SolutionSet s = solve_bivariate(q, y);
  EXPECT_NEAR(std::abs(residue_sum(one, {q, y}, s)), 0, 1e-14);
  EXPECT_NEAR(std::abs(residue_sum(x, {q, y}, s) - 1.0), 0, 1e-14);
}

TEST(Residue, EulerJacobiVanishes) {
  // Dense degrees (d1, d2): sum h / J = 0 for deg h <= d1 + d2 - 3.
  std::mt19937_64 rng(5);
  const HPolytope tri2 = hull({{0, 0}, {2, 0}, {0, 2}});
  const HPolytope tri3 = hull({{0, 0}, {3, 0}, {0, 3}});
  for (int t = 0; t < 10; ++t) {
    const CPoly f = random_on(tri3, rng), g = random_on(tri2, rng);
    const SolutionSet s = solve_bivariate(f, g);
    ASSERT_EQ(s.size(), 6u);
    const CPoly h = random_on(tri2, rng);
    double scale = 0;
    for (std::size_t i = 0; i < s.size(); ++i) scale += std::abs(h.eval(s.points[i]) / s.jacobians[i]);
    EXPECT_LT(std::abs(residue_sum(h, {f, g}, s)), 1e-9 * scale);
  }
}

TEST(Residue, PermutationInvariant) {
  std::mt19937_64 rng(6);
  const HPolytope tri2 = hull({{0, 0}, {2, 0}, {0, 2}});
  const CPoly f = random_on(tri2, rng), g = random_on(tri2, rng), h = random_on(tri2, rng);
  SolutionSet s = solve_bivariate(f, g);
  const Complex a = residue_sum(h, {f, g}, s);
  std::reverse(s.points.begin(), s.points.end());
  EXPECT_NEAR(std::abs(residue_sum(h, {f, g}, s) - a), 0, 1e-12 * std::max(1.0, std::abs(a)));
}

TEST(Residue, TangencyIsNonTransversal) {
  // y = x^2 against y = 0 meets doubly at the origin.
  const CPoly f = poly({{{0, 1}, 1}, {{2, 0}, -1}});
  const CPoly g = poly({{{0, 1}, 1}});
  SolutionSet s;
  s.points.push_back({0, 0});
  EXPECT_THROW(residue_sum(poly({{{0, 0}, 1}}), {f, g}, s), NonTransversalError);
  const SolutionSet found = solve_bivariate(f, g);
  ASSERT_FALSE(found.points.empty());
  EXPECT_TRUE(std::any_of(found.flagged.begin(), found.flagged.end(), [](bool b) { return b; }));
}
