#include "nucleus/smith.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nucleus;
using nucleus::oracle::ComplexGenerator;

namespace {

void expect_valid_snf(const LocalMatrix& M) {
  const auto s = smith_normal_form(M);
  EXPECT_EQ(s.U * M * s.V, s.D);
  EXPECT_EQ(s.U * s.U_inv, LocalMatrix::identity(M.prime(), M.rows()));
  EXPECT_EQ(s.V * s.V_inv, LocalMatrix::identity(M.prime(), M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (i == j && i < s.rank()) {
        EXPECT_EQ(s.D(i, i), LocalScalar::power_of_p(M.prime(), s.exponents[i]));
      } else {
        EXPECT_TRUE(s.D(i, j).is_zero());
      }
    }
  }
  EXPECT_TRUE(std::is_sorted(s.exponents.begin(), s.exponents.end()));
}

std::vector<CyclicSummand> oracle_cokernel(const LocalMatrix& M) {
  const auto f = oracle::integer_invariant_factors(oracle::integer_form(M));
  std::vector<CyclicSummand> out(M.rows() - f.size(), CyclicSummand::free());
  for (const auto& x : f) {
    const int e = oracle::p_adic_valuation(x, M.prime().value());
    if (e > 0) out.push_back(CyclicSummand::torsion(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Smith, SmallExamples) {
  const Prime two(2);
  EXPECT_EQ(smith_normal_form(LocalMatrix(two, {{2}})).D, LocalMatrix(two, {{2}}));
  EXPECT_EQ(smith_normal_form(LocalMatrix::identity(two, 3)).D, LocalMatrix::identity(two, 3));
  const LocalMatrix M(two, {{6, 4}, {4, 8}});
  EXPECT_EQ(smith_normal_form(M).D, LocalMatrix(two, {{2, 0}, {0, 16}}));
  expect_valid_snf(M);
  // det = 32, valuation 5 = 1 + 4
  EXPECT_EQ(oracle::p_adic_valuation(BigInt(6 * 8 - 4 * 4), 2), 5);
}

TEST(Smith, EmptyMatrices) {
  const Prime p(3);
  const auto s = smith_normal_form(LocalMatrix(p, 0, 4));
  EXPECT_EQ(s.rank(), 0u);
  EXPECT_EQ(s.V.rows(), 4u);
  EXPECT_TRUE(cokernel_decomposition(LocalMatrix(p, 0, 4)).empty());
  EXPECT_EQ(cokernel_decomposition(LocalMatrix(p, 2, 0)).size(), 2u);
}

TEST(Smith, CokernelExamples) {
  const Prime two(2);
  EXPECT_EQ(cokernel_decomposition(LocalMatrix(two, {{2}})), std::vector{CyclicSummand::torsion(1)});
  EXPECT_EQ(cokernel_decomposition(LocalMatrix(two, 2, 2)),
            (std::vector{CyclicSummand::free(), CyclicSummand::free()}));
  EXPECT_EQ(cokernel_decomposition(LocalMatrix(two, {{6, 4}, {4, 8}})),
            (std::vector{CyclicSummand::torsion(1), CyclicSummand::torsion(4)}));
}

TEST(Smith, SummandText) {
  const Prime two(2);
  EXPECT_EQ(CyclicSummand::torsion(2).to_string(two), "Z/4");
  EXPECT_EQ(CyclicSummand::parse(two, "Z/8"), CyclicSummand::torsion(3));
  EXPECT_EQ(CyclicSummand::parse(two, "Z"), CyclicSummand::free());
  EXPECT_THROW(CyclicSummand::parse(two, "Z/6"), std::invalid_argument);
}

TEST(Smith, DeterministicPivot) {
  const Prime p(3);
  const LocalMatrix M(p, {{3, 1}, {1, 3}});
  const auto a = smith_normal_form(M), b = smith_normal_form(M);
  EXPECT_EQ(a.U, b.U);
  EXPECT_EQ(a.V, b.V);
  // Tie on valuation 0 goes to (0,1), the first unit in row-major order.
  EXPECT_TRUE(a.V(1, 0) != LocalScalar(p, 0));
}

TEST(Smith, RandomMatricesAgainstIntegerOracle) {
  for (unsigned p : {2u, 3u, 5u}) {
    const Prime prime(p);
    ComplexGenerator gen(prime, 100 + p);
    for (int trial = 0; trial < 150; ++trial) {
      const auto rows = static_cast<std::size_t>(gen.uniform(0, 5));
      const auto cols = static_cast<std::size_t>(gen.uniform(0, 5));
      LocalMatrix M(prime, rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (gen.chance(0.6)) M(i, j) = LocalScalar(prime, gen.uniform(-40, 40), gen.random_unit().numerator());
      expect_valid_snf(M);
      EXPECT_EQ(cokernel_decomposition(M), oracle_cokernel(M));
    }
  }
}

// 200 random 6x6 matrices with entry valuations <= 4, conjugated by random
// unimodular matrices on both sides.
TEST(Smith, CokernelInvariantUnderUnimodularChange) {
  const Prime two(2);
  ComplexGenerator gen(two, 2024);
  for (int trial = 0; trial < 200; ++trial) {
    LocalMatrix M(two, 6, 6);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (gen.chance(0.7)) M(i, j) = gen.random_unit() * LocalScalar::power_of_p(two, gen.uniform(0, 4));
    const auto [A, Ainv] = gen.random_invertible(6);
    const auto [B, Binv] = gen.random_invertible(6);
    EXPECT_EQ(A * Ainv, LocalMatrix::identity(two, 6));
    EXPECT_EQ(cokernel_decomposition(A * M * B), cokernel_decomposition(M));
  }
}

TEST(Smith, SolveAndKernel) {
  const Prime p(2);
  const LocalMatrix M(p, {{2, 4}, {0, 0}});
  const auto x = solve(M, LocalMatrix(p, {{6}, {0}}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(M * *x, LocalMatrix(p, {{6}, {0}}));
  EXPECT_FALSE(solve(M, LocalMatrix(p, {{1}, {0}})).has_value());
  EXPECT_FALSE(solve(M, LocalMatrix(p, {{0}, {1}})).has_value());
  const auto K = kernel_basis(M);
  EXPECT_EQ(K.cols(), 1u);
  EXPECT_TRUE((M * K).is_zero());
}
