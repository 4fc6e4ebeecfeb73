#include "toricabel/decomposition.hpp"
#include "toricabel/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace toricabel;

namespace {

SplitBundle parse(const char* fan, const char* spec) { return parse_bundle(builtin_fan(fan), spec); }

CycleClass ray_cycle(const Fan& fan, std::size_t ray, long long nu = 1) {
  return make_cycle(fan, fan.n() - 1, {{Cone({ray}), Integer(nu)}});
}

}  // namespace

TEST(Orbital, GloballyGeneratedEssentialIsOneRow) {
  for (const auto& [fan, spec] : {std::pair{"P2", "H"}, std::pair{"P2", "H,2H"},
                                  std::pair{"P1xP1", "(1,0),(0,1)"}, std::pair{"F1", "[1,0,0,1]"}}) {
    const OrbitalTable t = orbital_decomposition(parse(fan, spec));
    ASSERT_EQ(t.entries.size(), 1u) << fan << " " << spec;
    const auto& row = t.entries[0];
    EXPECT_TRUE(row.tau.is_zero());
    EXPECT_EQ(row.I.size(), parse(fan, spec).rank());
    EXPECT_EQ(row.codim, row.I.size());
  }
}

TEST(Orbital, GloballyGeneratedNonEssentialIsEmpty) {
  const OrbitalTable t = orbital_decomposition(parse("P1xP1", "(1,0),(1,0)"));
  EXPECT_TRUE(t.entries.empty());
  // 4 subsets of bundles times 9 cones.
  EXPECT_EQ(t.pairs_examined, 36u);
}

TEST(Orbital, FixedComponentContributesDivisorRow) {
  // P = hull{(0,0),(0,1),(2,1)}; the hyperplane for ray 1 misses P.
  const OrbitalTable t = orbital_decomposition(parse("F2", "[0,1,0,1]"));
  ASSERT_EQ(t.entries.size(), 2u);
  bool full = false, divisor = false;
  for (const auto& row : t.entries) {
    if (row.I == std::vector<std::size_t>{0} && row.tau.is_zero()) full = true;
    if (row.I.empty() && row.tau == Cone({1})) {
      divisor = true;
      EXPECT_EQ(row.codim, 1u);
    }
  }
  EXPECT_TRUE(full);
  EXPECT_TRUE(divisor);
}

TEST(Orbital, EmptySectionsGiveEmptyZeroCodimRow) {
  // A single point polytope: the trivial bundle; its generic section never vanishes.
  const OrbitalTable t = orbital_decomposition(parse("P2", "[0,0,0]"));
  EXPECT_TRUE(t.entries.empty());
}

TEST(Intersection, SegmentOnProductOfLines) {
  const SplitBundle e = parse("P1xP1", "(2,0)");
  EXPECT_EQ(intersection_number(e, Cone({2})), 2);
  EXPECT_EQ(intersection_number(e, Cone({3})), 2);
  EXPECT_EQ(intersection_number(e, Cone({0})), 0);
  EXPECT_EQ(intersection_number(e, Cone({1})), 0);
}

TEST(Intersection, ThreefoldRankTwo) {
  const SplitBundle e = parse("P1xP1xP1", "(1,1,0),(0,1,1)");
  for (std::size_t r = 0; r < 6; ++r) EXPECT_EQ(intersection_number(e, Cone({r})), 1) << r;
}

TEST(Intersection, WrongDimensionThrows) {
  const SplitBundle e = parse("P2", "H");
  EXPECT_THROW(intersection_number(e, Cone({0, 1})), InputError);
  EXPECT_THROW(cycle_intersection(e, make_cycle(e.fan(), 0, {{Cone({0, 1}), Integer(1)}})), InputError);
}

TEST(Intersection, TopDegreeMatchesMixedVolumeOfLatticeHulls) {
  // Along the zero cone the projected faces are the polytopes in a lattice frame.
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> d(0, 2);
  for (const char* name : {"P2", "P1xP1", "F1", "F2"}) {
    const auto fan = builtin_fan(name);
    for (int t = 0; t < 6; ++t) {
      std::vector<LineBundle> lbs;
      for (int i = 0; i < 2; ++i) {
        IntVec k;
        for (std::size_t r = 0; r < fan->ray_count(); ++r) k.emplace_back(d(rng));
        lbs.emplace_back(fan, TDivisor{k});
      }
      const SplitBundle e(fan, lbs);
      // Mobile faces are hulls of lattice points, not P_D itself.
      std::vector<HPolytope> hulls;
      for (const auto& l : e.line_bundles()) {
        const auto pts = l.polytope().lattice_points();
        hulls.push_back(pts.empty() ? HPolytope(2) : HPolytope::from_points(2, pts));
      }
      EXPECT_EQ(Rational(intersection_number(e, Cone())), mixed_volume(PolytopeFamily(hulls), 2))
          << name;
    }
  }
}

TEST(Intersection, LineClassOnPlane) {
  const auto fan = builtin_fan("P2");
  for (int deg = 1; deg <= 4; ++deg) {
    const SplitBundle e = parse_bundle(fan, std::to_string(deg) + "H");
    for (std::size_t r = 0; r < 3; ++r) EXPECT_EQ(cycle_intersection(e, ray_cycle(*fan, r)), deg);
    EXPECT_EQ(cycle_intersection(e, ray_cycle(*fan, 0, 3)), 3 * deg);
  }
}

TEST(Intersection, DegenerateClasses) {
  const SplitBundle e = parse("P1xP1", "(2,0)");
  EXPECT_TRUE(is_degenerate_class(e, ray_cycle(e.fan(), 0)));
  EXPECT_FALSE(is_degenerate_class(e, ray_cycle(e.fan(), 2)));
  // Mixed class: 2 [D_0] + [D_2] still meets the sections.
  const CycleClass mixed = make_cycle(e.fan(), 1, {{Cone({0}), Integer(2)}, {Cone({2}), Integer(1)}});
  EXPECT_EQ(cycle_intersection(e, mixed), 2);
}

TEST(Cycles, Validation) {
  const auto fan = builtin_fan("P2");
  EXPECT_THROW(make_cycle(*fan, 1, {{Cone({0, 1}), Integer(1)}}), InputError);
  EXPECT_THROW(make_cycle(*fan, 3, {}), InputError);
  EXPECT_THROW(make_cycle(*builtin_fan("P1xP1"), 1, {{Cone({0, 1}), Integer(1)}}), InputError);
  const CycleClass c = cycle_from_json(*fan, nlohmann::json::parse("[[[0],2],[[0],1]]"), 1);
  EXPECT_EQ(c.coeffs.at(Cone({0})), 3);
  EXPECT_THROW(cycle_from_json(*fan, nlohmann::json::parse(R"({"x":1})"), 1), InputError);
}

TEST(DualCodim, Table) {
  EXPECT_EQ(dual_codim(1, 2), 1);
  EXPECT_EQ(dual_codim(0, 2), 2);
  EXPECT_EQ(dual_codim(2, 2), 0);
  EXPECT_EQ(dual_codim(3, 1), 0);
  EXPECT_THROW(dual_codim(-1, 1), InputError);
}

TEST(Multidegree, LineInPlane) {
  const auto fan = builtin_fan("P2");
  const CycleClass line = ray_cycle(*fan, 0);
  EXPECT_EQ(resultant_multidegree(parse_bundle(fan, "H,2H"), line), make_int_vec({2, 1}));
  EXPECT_EQ(resultant_multidegree(parse_bundle(fan, "2H,H"), line), make_int_vec({1, 2}));
  EXPECT_EQ(resultant_multidegree(parse_bundle(fan, "H,H"), line), make_int_vec({1, 1}));
  EXPECT_EQ(resultant_multidegree(parse_bundle(fan, "H,H"), make_cycle(*fan, 1, {})),
            make_int_vec({0, 0}));
}

TEST(Multidegree, AdditiveInTheCycle) {
  const auto fan = builtin_fan("F1");
  const SplitBundle e = parse_bundle(fan, "[1,0,0,1],[0,1,1,0]");
  IntVec sum(2, Integer(0));
  std::vector<std::pair<Cone, Integer>> terms;
  for (std::size_t r = 0; r < 4; ++r) {
    const IntVec d = resultant_multidegree(e, ray_cycle(*fan, r, static_cast<long long>(r + 1)));
    for (std::size_t i = 0; i < 2; ++i) sum[i] += d[i];
    terms.emplace_back(Cone({r}), Integer(static_cast<long long>(r + 1)));
  }
  EXPECT_EQ(resultant_multidegree(e, make_cycle(*fan, 1, terms)), sum);
}

TEST(Multidegree, RankMismatchThrows) {
  const auto fan = builtin_fan("P2");
  EXPECT_THROW(resultant_multidegree(parse_bundle(fan, "H"), ray_cycle(*fan, 0)), InputError);
}

TEST(ParameterSpace, Shapes) {
  EXPECT_EQ(parameter_space_shape(parse("P1xP1xP1", "(2,0,0)")), (std::vector<long long>{2}));
  EXPECT_EQ(parameter_space_shape(parse("P2", "H")), (std::vector<long long>{2}));
  EXPECT_EQ(parameter_space_shape(parse("P2", "H,H")), (std::vector<long long>{2, 2}));
  EXPECT_EQ(parameter_space_shape(parse("P2", "3H")), (std::vector<long long>{9}));
}

TEST(Hypersurface, ClassOfNewtonPolytope) {
  const auto fan = builtin_fan("P2");
  const std::vector<IntVec> conic{make_int_vec({0, 0}), make_int_vec({2, 0}), make_int_vec({0, 2})};
  EXPECT_EQ(hypersurface_class(*fan, conic).k, make_int_vec({0, 0, 2}));
  const CycleClass c = hypersurface_cycle(*fan, conic);
  EXPECT_EQ(c.dim, 1u);
  // A conic meets a general line twice.
  EXPECT_EQ(cycle_intersection(parse_bundle(fan, "H"), c), 2);
  EXPECT_THROW(hypersurface_class(*fan, {}), InputError);
}
