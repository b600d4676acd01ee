#pragma once

// Test-only oracles. Nothing here calls into the library's Smith normal form,
// homology or minimalization code; they are the independent side of the
// checks in the unit and acceptance suites.

#include "nucleus/chain_complex.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace nucleus::oracle {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Clears denominators by multiplying through by their product, a unit in Z_(p).
inline IntMatrix integer_form(const LocalMatrix& m) {
  BigInt scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) scale = boost::multiprecision::lcm(scale, m(i, j).denominator());
  IntMatrix out(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i][j] = m(i, j).numerator() * (scale / m(i, j).denominator());
  return out;
}

/// Invariant factors of an integer matrix by the classical Euclidean
/// algorithm (division with remainder, no valuations involved).
inline std::vector<BigInt> integer_invariant_factors(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<BigInt> factors;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero |entry| in the block.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return factors;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        BigInt q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        BigInt q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility with the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    factors.push_back(abs(a[t][t]));
  }
  return factors;
}

inline int p_adic_valuation(BigInt n, unsigned p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Homology by integer invariant factors localized at p:
/// free rank = c_n - rank d_n - rank d_{n+1}, torsion = p-parts of the
/// invariant factors of d_{n+1}.
inline GradedModule oracle_homology(const CellComplex& C) {
  const unsigned p = C.prime().value();
  GradedModule H(C.prime());
  for (int n = C.hurewicz_dim(); n <= C.top_degree(); ++n) {
    if (!C.reliable(n)) {
      H.unreliable.insert(n);
      continue;
    }
    if (C.rank(n) == 0) continue;
    const auto in = integer_invariant_factors(integer_form(C.differential(n)));
    const auto out = integer_invariant_factors(integer_form(C.differential(n + 1)));
    for (std::size_t i = 0; i < C.rank(n) - in.size() - out.size(); ++i) H.add(n, CyclicSummand::free());
    for (const auto& f : out) {
      const int e = p_adic_valuation(f, p);
      if (e > 0) H.add(n, CyclicSummand::torsion(e));
    }
  }
  return H;
}

/// A random complex with known answers: a direct sum of spheres, Moore
/// pieces and contractible pairs, scrambled by random invertible base changes.
struct RandomComplex {
  CellComplex complex;
  GradedModule truth;
  bool minimal;
};

class ComplexGenerator {
 public:
  ComplexGenerator(Prime p, std::uint32_t seed) : p_(p), rng_(seed) {}

  RandomComplex next(int max_span = 12, std::size_t max_cells = 4, double contractible_chance = 0.5) {
    const int n0 = uniform(-2, 3);
    const int span = uniform(0, max_span);
    const int top = n0 + span;
    std::map<int, std::size_t> load;
    struct Piece {
      int degree;
      int kind;  // 0 free, 1 torsion, 2 contractible
      int exponent;
      LocalScalar unit;
    };
    std::vector<Piece> pieces;
    const bool allow_contractible = chance(contractible_chance);
    // Bottom cell so that the Hurewicz dimension is realized.
    pieces.push_back({n0, 0, 0, LocalScalar(p_, 1)});
    load[n0] = 1;
    const int attempts = uniform(0, 3 * (span + 1));
    for (int a = 0; a < attempts; ++a) {
      const int n = uniform(n0, top);
      int kind = uniform(0, allow_contractible ? 2 : 1);
      if (kind > 0 && n + 1 > top) kind = 0;
      const std::size_t need_hi = kind > 0 ? 1 : 0;
      if (load[n] + 1 > max_cells || (need_hi && load[n + 1] + 1 > max_cells)) continue;
      load[n] += 1;
      if (need_hi) load[n + 1] += 1;
      pieces.push_back({n, kind, uniform(1, 3), random_unit()});
    }
    if (allow_contractible && std::none_of(pieces.begin(), pieces.end(), [](const Piece& x) { return x.kind == 2; })) {
      // Force one contractible pair where it fits.
      for (int n = n0; n < top; ++n) {
        if (load[n] < max_cells && load[n + 1] < max_cells) {
          load[n] += 1;
          load[n + 1] += 1;
          pieces.push_back({n, 2, 0, random_unit()});
          break;
        }
      }
    }

    std::map<int, std::vector<std::string>> cells;
    std::vector<std::pair<int, std::size_t>> lower_idx(pieces.size()), upper_idx(pieces.size());
    GradedModule truth(p_);
    bool minimal = true;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& pc = pieces[i];
      lower_idx[i] = {pc.degree, cells[pc.degree].size()};
      cells[pc.degree].push_back("c" + std::to_string(i) + "a");
      if (pc.kind > 0) {
        upper_idx[i] = {pc.degree + 1, cells[pc.degree + 1].size()};
        cells[pc.degree + 1].push_back("c" + std::to_string(i) + "b");
      }
      if (pc.kind == 0) truth.add(pc.degree, CyclicSummand::free());
      if (pc.kind == 1) truth.add(pc.degree, CyclicSummand::torsion(pc.exponent));
      if (pc.kind == 2) minimal = false;
    }
    auto rank = [&](int n) { return cells.count(n) ? cells[n].size() : std::size_t{0}; };
    std::map<int, LocalMatrix> d;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& pc = pieces[i];
      if (pc.kind == 0) continue;
      const int n = pc.degree + 1;
      if (!d.count(n)) d.emplace(n, LocalMatrix(p_, rank(n - 1), rank(n)));
      const LocalScalar value = pc.kind == 1 ? pc.unit * LocalScalar::power_of_p(p_, pc.exponent) : pc.unit;
      d.at(n)(lower_idx[i].second, upper_idx[i].second) = value;
    }

    // Base changes A_n with tracked inverses; d'_n = A_{n-1} d_n A_n^{-1}.
    std::map<int, std::pair<LocalMatrix, LocalMatrix>> base;
    for (const auto& [n, c] : cells) base.emplace(n, random_invertible(c.size()));
    std::map<int, LocalMatrix> scrambled;
    for (const auto& [n, m] : d) {
      scrambled.emplace(n, base.at(n - 1).first * m * base.at(n).second);
    }
    for (int n = n0; n <= top; ++n) truth.groups[n];
    CellComplex C(p_, n0, top, false, std::move(cells), std::move(scrambled));
    return {std::move(C), std::move(truth), minimal};
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double x) { return std::uniform_real_distribution<double>(0, 1)(rng_) < x; }

  LocalScalar random_unit() {
    while (true) {
      int v = uniform(-7, 7);
      if (v != 0 && v % static_cast<int>(p_.value()) != 0) return LocalScalar(p_, v);
    }
  }

  /// Product of elementary matrices; returns (A, A^{-1}).
  std::pair<LocalMatrix, LocalMatrix> random_invertible(std::size_t n) {
    LocalMatrix A = LocalMatrix::identity(p_, n), Ainv = LocalMatrix::identity(p_, n);
    if (n == 0) return {A, Ainv};
    const int ops = uniform(0, 6);
    for (int k = 0; k < ops; ++k) {
      const auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1));
      const auto j = static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1));
      if (i == j) {
        const LocalScalar u = random_unit();
        A.scale_row(i, u);
        Ainv.scale_col(i, u.inverse());
      } else {
        const LocalScalar f(p_, uniform(-3, 3));
        A.add_row_multiple(i, j, f);
        Ainv.add_col_multiple(j, i, -f);
      }
    }
    return {A, Ainv};
  }

  std::mt19937& rng() { return rng_; }

 private:
  Prime p_;
  std::mt19937 rng_;
};

/// Drops empty degrees so modules compare by content.
inline GradedModule strip(GradedModule m) {
  for (auto it = m.groups.begin(); it != m.groups.end();) {
    it = it->second.empty() ? m.groups.erase(it) : std::next(it);
  }
  return m;
}

}  // namespace nucleus::oracle
