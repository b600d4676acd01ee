#include "nucleus/chain_complex.hpp"
#include "nucleus/chain_json.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace nucleus;
using nucleus::oracle::ComplexGenerator;
using nucleus::oracle::oracle_homology;
using nucleus::oracle::strip;

namespace {

GradedModule module_of(Prime p, std::initializer_list<std::pair<int, std::vector<CyclicSummand>>> parts) {
  GradedModule H(p);
  for (const auto& [n, list] : parts)
    for (auto s : list) H.add(n, s);
  return H;
}

bool cone_is_acyclic(const ChainMap& f) {
  const auto H = homology(mapping_cone(f));
  for (const auto& [n, g] : H.groups) {
    if (!g.empty()) return false;
  }
  return true;
}

}  // namespace

TEST(Chain, SphereAndMoore) {
  const Prime two(2), three(3);
  EXPECT_EQ(strip(homology(CellComplex::sphere(three, 5))), module_of(three, {{5, {CyclicSummand::free()}}}));
  EXPECT_EQ(strip(homology(CellComplex::moore(two, 3, 2))), module_of(two, {{2, {CyclicSummand::torsion(3)}}}));
  EXPECT_TRUE(is_minimal(CellComplex::moore(two, 1, 0)));
  EXPECT_TRUE(skeletal_inclusion_check(CellComplex::sphere(two, 0)));
}

TEST(Chain, UnitDifferentialIsNotMinimal) {
  const Prime two(2);
  const CellComplex C(two, 0, 1, false, {{0, {"a", "b"}}, {1, {"c"}}}, {{1, LocalMatrix(two, {{1}, {0}})}});
  EXPECT_FALSE(is_minimal(C));
  EXPECT_FALSE(skeletal_inclusion_check(C));
  EXPECT_EQ(strip(homology(C)), module_of(two, {{0, {CyclicSummand::free()}}}));
}

TEST(Chain, RejectsInvalidComplexes) {
  const Prime two(2);
  EXPECT_THROW(CellComplex(two, 0, 2, false, {{0, {"a"}}, {1, {"b"}}, {2, {"c"}}},
                           {{1, LocalMatrix(two, {{1}})}, {2, LocalMatrix(two, {{1}})}}),
               std::invalid_argument);
  EXPECT_THROW(CellComplex(two, 1, 2, false, {{0, {"a"}}}), std::invalid_argument);
  EXPECT_THROW(CellComplex(two, 0, 1, false, {{0, {"a"}}, {1, {"b"}}}, {{1, LocalMatrix(two, 2, 1)}}),
               std::invalid_argument);
}

TEST(Chain, TruncationMarksTopDegreesUnreliable) {
  const Prime two(2);
  const CellComplex C(two, 0, 4, true, {{0, {"a"}}, {4, {"b"}}});
  const auto H = homology(C);
  EXPECT_EQ(H.unreliable, (std::set<int>{3, 4}));
  EXPECT_TRUE(H.at(4).empty());
  EXPECT_EQ(H.at(0).size(), 1u);
}

TEST(Chain, MinimalizeTorsionScheme) {
  const Prime two(2);
  const auto X = minimalize(module_of(two, {{3, {CyclicSummand::torsion(2)}}}));
  EXPECT_EQ(X.cells(3), std::vector<std::string>{"j.3.0"});
  EXPECT_EQ(X.cells(4), std::vector<std::string>{"k.3.0"});
  EXPECT_EQ(X.differential(4), LocalMatrix(two, {{4}}));
  EXPECT_TRUE(is_minimal(X));
}

TEST(Chain, MinimalizeOrdersFreeBeforeTorsion) {
  const Prime three(3);
  const auto H = module_of(three, {{0, {CyclicSummand::torsion(2), CyclicSummand::free(), CyclicSummand::torsion(1)}},
                                   {1, {CyclicSummand::free()}}});
  const auto X = minimalize(H);
  EXPECT_EQ(X.cells(0), (std::vector<std::string>{"j.0.0", "j.0.1", "j.0.2"}));
  EXPECT_EQ(X.cells(1), (std::vector<std::string>{"j.1.0", "k.0.1", "k.0.2"}));
  EXPECT_EQ(X.differential(1), LocalMatrix(three, {{0, 0, 0}, {0, 3, 0}, {0, 0, 9}}));
  EXPECT_EQ(strip(homology(X)), H);
  EXPECT_THROW(minimalize(GradedModule(three)), std::invalid_argument);
}

TEST(Chain, MinimalizeIsIdempotent) {
  const Prime two(2);
  const auto H = module_of(two, {{1, {CyclicSummand::free(), CyclicSummand::torsion(3)}}, {4, {CyclicSummand::torsion(1)}}});
  const auto X = minimalize(H);
  const auto Y = minimalize(strip(homology(X)));
  EXPECT_EQ(X.all_cells(), Y.all_cells());
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(X.differential(n), Y.differential(n));
}

TEST(Chain, MinimalizeWithMapOnMinimalInputIsIdentity) {
  const Prime five(5);
  const auto S = CellComplex::sphere(five, 0);
  const auto m = minimalize_with_map(S);
  EXPECT_EQ(m.map.component(0), LocalMatrix::identity(five, 1));
  EXPECT_EQ(m.complex.cell_count(), 1u);
}

TEST(Chain, HurewiczComplexPredicateMatchesCyclicBottom) {
  const Prime two(2);
  ComplexGenerator gen(two, 77);
  for (int trial = 0; trial < 200; ++trial) {
    auto rc = gen.next(6, 3);
    const auto X = minimalize(strip(rc.truth));
    const bool cyclic = rc.truth.at(rc.complex.hurewicz_dim()).size() == 1;
    EXPECT_EQ(X.is_hurewicz_complex(), cyclic);
  }
}

// 500 seeded complexes over Z_(2), degrees <= 12, <= 4 cells per degree.
TEST(Chain, RandomComplexesAgainstOracle) {
  const Prime two(2);
  ComplexGenerator gen(two, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rc = gen.next();
    const auto H = homology(rc.complex);
    ASSERT_EQ(strip(H), strip(rc.truth)) << "trial " << trial;
    ASSERT_EQ(strip(H), strip(oracle_homology(rc.complex))) << "trial " << trial;
    EXPECT_EQ(is_minimal(rc.complex), rc.minimal);
    EXPECT_EQ(is_minimal(rc.complex), skeletal_inclusion_check(rc.complex));
    const auto X = minimalize(strip(H));
    EXPECT_TRUE(is_minimal(X));
    EXPECT_EQ(strip(homology(X)), strip(H));
  }
}

TEST(Chain, OddPrimeRandomComplexes) {
  for (unsigned p : {3u, 5u}) {
    const Prime prime(p);
    ComplexGenerator gen(prime, p * 31);
    for (int trial = 0; trial < 150; ++trial) {
      const auto rc = gen.next(8, 3);
      EXPECT_EQ(strip(homology(rc.complex)), strip(oracle_homology(rc.complex)));
      EXPECT_EQ(is_minimal(rc.complex), skeletal_inclusion_check(rc.complex));
    }
  }
}

TEST(Chain, MinimalModelMapIsQuasiIsomorphism) {
  const Prime two(2);
  ComplexGenerator gen(two, 9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rc = gen.next();
    const auto model = minimalize_with_map(rc.complex);
    EXPECT_TRUE(is_minimal(model.complex));
    EXPECT_TRUE(cone_is_acyclic(model.map)) << "trial " << trial;
  }
}

TEST(Chain, MappingConeOfZeroMapIsNotAcyclic) {
  const Prime two(2);
  const auto S = CellComplex::sphere(two, 0);
  EXPECT_FALSE(cone_is_acyclic(ChainMap(S, S, {{0, LocalMatrix(two, {{0}})}})));
  EXPECT_FALSE(cone_is_acyclic(ChainMap(S, S, {{0, LocalMatrix(two, {{2}})}})));
  EXPECT_TRUE(cone_is_acyclic(ChainMap(S, S, {{0, LocalMatrix(two, {{3}})}})));
}

TEST(Chain, Suspension) {
  const Prime two(2);
  const auto S1 = suspend(CellComplex::sphere(two, 0), 1);
  EXPECT_EQ(S1.hurewicz_dim(), 1);
  EXPECT_EQ(S1.rank(1), 1u);
  ComplexGenerator gen(two, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rc = gen.next();
    const int k = gen.uniform(-5, 5);
    EXPECT_EQ(strip(oracle_homology(suspend(rc.complex, k))), strip(oracle_homology(rc.complex)).shifted(k));
    const auto same = suspend(rc.complex, 0);
    EXPECT_EQ(same.all_cells(), rc.complex.all_cells());
  }
}

TEST(Chain, JsonRoundTrip) {
  const Prime three(3);
  ComplexGenerator gen(three, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto rc = gen.next(6, 3);
    const auto back = complex_from_json(to_json(rc.complex));
    EXPECT_EQ(back.all_cells(), rc.complex.all_cells());
    for (int n = back.hurewicz_dim(); n <= back.top_degree() + 1; ++n)
      EXPECT_EQ(back.differential(n), rc.complex.differential(n));
  }
  EXPECT_THROW(complex_from_json(nlohmann::json::parse(R"({"prime": 2})")), std::invalid_argument);
}
