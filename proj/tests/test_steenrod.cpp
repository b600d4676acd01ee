#include "nucleus/steenrod/algebra.hpp"
#include "support/steenrod_oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nucleus;

namespace {

SteenrodElement word(const SteenrodAlgebra& A, const std::string& s) { return A.monomial(A.parse_word(s)); }

std::string reduced(const SteenrodAlgebra& A, const std::string& s) { return A.to_string(A.reduce(A.parse_word(s))); }

Monomial random_word(const SteenrodAlgebra& A, std::mt19937& rng, int max_degree) {
  const unsigned p = A.prime().value();
  Monomial w;
  int deg = 0;
  std::uniform_int_distribution<int> len(0, 4);
  const int n = len(rng);
  for (int k = 0; k < n; ++k) {
    std::vector<Letter> options;
    for (const auto& l : A.letters_up_to(max_degree - deg)) options.push_back(l);
    if (options.empty()) break;
    const Letter l = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    w.push_back(l);
    deg += l.degree(p);
  }
  return w;
}

}  // namespace

TEST(Steenrod, AdemExamplesAtTwo) {
  const SteenrodAlgebra A(Prime(2));
  EXPECT_EQ(reduced(A, "Sq1 Sq1"), "0");
  EXPECT_EQ(reduced(A, "Sq2 Sq2"), "Sq3 Sq1");
  EXPECT_EQ(reduced(A, "Sq1 Sq2"), "Sq3");
  EXPECT_EQ(reduced(A, "Sq2 Sq1"), "Sq2 Sq1");
  EXPECT_EQ(reduced(A, "Sq^3 Sq^2"), "0");
  EXPECT_EQ(reduced(A, "1"), "1");
  EXPECT_EQ(reduced(A, "Sq0 Sq4"), "Sq4");
}

TEST(Steenrod, TwoLetterAdemAgainstPascal) {
  const SteenrodAlgebra A(Prime(2));
  for (int a = 1; a <= 14; ++a) {
    for (int b = 1; b <= 14; ++b) {
      SteenrodElement expected;
      if (a >= 2 * b) {
        expected = A.monomial({Letter::sq(a), Letter::sq(b)});
      } else {
        for (int c = 0; 2 * c <= a; ++c) {
          if (!oracle::pascal_mod(b - c - 1, a - 2 * c, 2)) continue;
          Monomial m{Letter::sq(a + b - c)};
          if (c > 0) m.push_back(Letter::sq(c));
          A.add_into(expected, A.monomial(m), 1);
        }
      }
      EXPECT_EQ(A.reduce(Monomial{Letter::sq(a), Letter::sq(b)}), expected) << a << "," << b;
    }
  }
}

TEST(Steenrod, LucasAgreesWithPascal) {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (int n = -2; n <= 40; ++n)
      for (int k = -1; k <= 42; ++k) EXPECT_EQ(binomial_mod(n, k, p), oracle::pascal_mod(n, k, p)) << n << " " << k;
  }
}

TEST(Steenrod, AdmissibleBasisExamples) {
  const SteenrodAlgebra A(Prime(2));
  EXPECT_EQ(A.basis(0), std::vector<Monomial>{Monomial{}});
  EXPECT_EQ(A.basis(1), std::vector<Monomial>{A.parse_word("Sq1")});
  EXPECT_EQ(A.basis(3), (std::vector<Monomial>{A.parse_word("Sq2 Sq1"), A.parse_word("Sq3")}));
  EXPECT_TRUE(A.basis(-1).empty());
  const SteenrodAlgebra B(Prime(3));
  EXPECT_EQ(B.basis(5), (std::vector<Monomial>{B.parse_word("b P1"), B.parse_word("P1 b")}));
  EXPECT_EQ(B.basis(6), std::vector<Monomial>{B.parse_word("b P1 b")});
}

TEST(Steenrod, BasisSizesMatchPoincareSeries) {
  const int N = 40;
  const SteenrodAlgebra two(Prime(2));
  const auto s2 = oracle::steenrod_series_mod2(N);
  for (int n = 0; n <= N; ++n) {
    const auto b = two.basis(n);
    EXPECT_EQ(static_cast<long long>(b.size()), s2[n]) << "degree " << n;
    for (const auto& m : b) EXPECT_TRUE(two.is_admissible(m));
  }
  for (unsigned p : {3u, 5u}) {
    const SteenrodAlgebra A{Prime(p)};
    const auto s = oracle::odd_series(p, 0, 60);
    for (int n = 0; n <= 60; ++n) {
      const auto b = A.basis(n);
      EXPECT_EQ(static_cast<long long>(b.size()), s[n]) << "p=" << p << " degree " << n;
      for (const auto& m : b) EXPECT_TRUE(A.is_admissible(m));
    }
  }
}

// reduce(w1 w2) = reduce(reduce(w1) reduce(w2)) for random words of degree <= 20.
TEST(Steenrod, ReductionIsConfluent) {
  for (unsigned p : {2u, 3u, 5u}) {
    const SteenrodAlgebra A{Prime(p)};
    std::mt19937 rng(40 + p);
    for (int trial = 0; trial < 300; ++trial) {
      const Monomial w1 = random_word(A, rng, 10), w2 = random_word(A, rng, 10);
      Monomial both = w1;
      both.insert(both.end(), w2.begin(), w2.end());
      const auto direct = A.reduce(both);
      EXPECT_EQ(direct, A.multiply(A.reduce(w1), A.reduce(w2)));
      for (const auto& [m, c] : direct.terms) {
        EXPECT_TRUE(A.is_admissible(m));
        EXPECT_EQ(A.degree(m), A.degree(both));
        EXPECT_NE(c, 0u);
      }
    }
  }
}

TEST(Steenrod, Associativity) {
  for (unsigned p : {2u, 3u}) {
    const SteenrodAlgebra A{Prime(p)};
    std::mt19937 rng(7 * p);
    for (int trial = 0; trial < 150; ++trial) {
      const auto x = A.reduce(random_word(A, rng, 8));
      const auto y = A.reduce(random_word(A, rng, 8));
      const auto z = A.reduce(random_word(A, rng, 8));
      EXPECT_EQ(A.multiply(A.multiply(x, y), z), A.multiply(x, A.multiply(y, z)));
    }
  }
}

TEST(Steenrod, OddPrimeRelations) {
  const SteenrodAlgebra A(Prime(3));
  EXPECT_EQ(reduced(A, "b b"), "0");
  // P1 P1 = 2 P2 at p = 3.
  EXPECT_EQ(reduced(A, "P1 P1"), "2 P2");
  EXPECT_EQ(reduced(A, "P3 P1"), "P3 P1");
  EXPECT_THROW(A.parse_word("Sq1"), std::invalid_argument);
  EXPECT_THROW(SteenrodAlgebra(Prime(2)).parse_word("P1"), std::invalid_argument);
}

TEST(Steenrod, MilnorPrimitives) {
  const SteenrodAlgebra A(Prime(2));
  EXPECT_EQ(A.milnor_primitive(0), word(A, "Sq1"));
  EXPECT_EQ(A.to_string(A.milnor_primitive(1)), "Sq2 Sq1 + Sq3");
  for (int i = 0; i <= 3; ++i) {
    const auto qi = A.milnor_primitive(i);
    EXPECT_EQ(A.degree(qi.terms.begin()->first), (1 << (i + 1)) - 1);
    EXPECT_TRUE(A.multiply(qi, qi).is_zero());
    for (int j = 0; j < i; ++j) {
      const auto qj = A.milnor_primitive(j);
      EXPECT_EQ(A.multiply(qi, qj), A.multiply(qj, qi));
    }
  }
  const SteenrodAlgebra B(Prime(3));
  EXPECT_EQ(B.to_string(B.milnor_primitive(1)), B.to_string(B.parse("P1 b + 2 b P1")));
  for (int i = 0; i <= 2; ++i) {
    const auto q = B.milnor_primitive(i);
    EXPECT_TRUE(B.multiply(q, q).is_zero());
  }
}

TEST(Steenrod, ParseElements) {
  const SteenrodAlgebra A(Prime(2));
  EXPECT_EQ(A.parse("Sq2 Sq2 + Sq3 Sq1"), SteenrodElement{});
  EXPECT_EQ(A.parse("Q1"), A.milnor_primitive(1));
  EXPECT_EQ(A.parse("3 Sq1"), word(A, "Sq1"));
  EXPECT_THROW(A.parse("Sq2 +"), std::invalid_argument);
  EXPECT_THROW(A.parse("Sqx"), std::invalid_argument);
}
