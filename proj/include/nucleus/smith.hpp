#pragma once

// Smith normal form over Z_(p) and the module-theoretic helpers built on it.

#include "nucleus/local_matrix.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace nucleus {

/// U * M * V = D, D diagonal with entries p^e_1, ..., p^e_r, 0, ... and
/// e_1 <= e_2 <= ... . The inverses of U and V are tracked alongside.
struct SmithForm {
  LocalMatrix U;
  LocalMatrix U_inv;
  LocalMatrix V;
  LocalMatrix V_inv;
  LocalMatrix D;
  std::vector<int> exponents;  // one per nonzero diagonal entry

  std::size_t rank() const { return exponents.size(); }
};

/// Pivot rule: entry of minimal valuation in the remaining block, lowest row
/// then lowest column on ties. Pivots are normalized to exact powers of p.
inline SmithForm smith_normal_form(const LocalMatrix& M) {
  const Prime p = M.prime();
  const std::size_t r = M.rows(), c = M.cols();
  SmithForm s{LocalMatrix::identity(p, r), LocalMatrix::identity(p, r), LocalMatrix::identity(p, c),
              LocalMatrix::identity(p, c), M, {}};
  auto& D = s.D;

  for (std::size_t k = 0; k < std::min(r, c); ++k) {
    int best = kInfiniteValuation;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = k; i < r; ++i) {
      for (std::size_t j = k; j < c; ++j) {
        const int v = D(i, j).valuation();
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (best == kInfiniteValuation) break;

    D.swap_rows(k, bi);
    s.U.swap_rows(k, bi);
    s.U_inv.swap_cols(k, bi);
    D.swap_cols(k, bj);
    s.V.swap_cols(k, bj);
    s.V_inv.swap_rows(k, bj);

    const LocalScalar unit = D(k, k).unit_part();
    const LocalScalar unit_inv = unit.inverse();
    D.scale_row(k, unit_inv);
    s.U.scale_row(k, unit_inv);
    s.U_inv.scale_col(k, unit);

    const LocalScalar pivot = D(k, k);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == k || D(i, k).is_zero()) continue;
      const LocalScalar f = D(i, k).exact_div(pivot);
      D.add_row_multiple(i, k, -f);
      s.U.add_row_multiple(i, k, -f);
      s.U_inv.add_col_multiple(k, i, f);
    }
    for (std::size_t j = 0; j < c; ++j) {
      if (j == k || D(k, j).is_zero()) continue;
      const LocalScalar f = D(k, j).exact_div(pivot);
      D.add_col_multiple(j, k, -f);
      s.V.add_col_multiple(j, k, -f);
      s.V_inv.add_row_multiple(k, j, f);
    }
    s.exponents.push_back(best);
  }
  return s;
}

/// A cyclic Z_(p)-module: free (Z_(p)) or torsion Z/p^e with e >= 1.
class CyclicSummand {
 public:
  static CyclicSummand free() { return CyclicSummand(0); }
  static CyclicSummand torsion(int exponent) {
    if (exponent < 1) throw std::invalid_argument("torsion exponent must be >= 1");
    return CyclicSummand(exponent);
  }

  bool is_free() const { return exponent_ == 0; }
  /// Torsion exponent e for Z/p^e. Zero for the free summand.
  int exponent() const { return exponent_; }

  /// Free summands sort first, then torsion by increasing exponent.
  friend auto operator<=>(CyclicSummand, CyclicSummand) = default;

  /// "Z" or "Z/p^e" written out numerically, e.g. "Z/4".
  std::string to_string(Prime p) const {
    if (is_free()) return "Z";
    BigInt order = 1;
    for (int i = 0; i < exponent_; ++i) order *= p.value();
    return "Z/" + order.str();
  }

  /// Inverse of to_string; rejects orders that are not powers of p.
  static CyclicSummand parse(Prime p, const std::string& text) {
    if (text == "Z" || text == "free") return free();
    if (text.rfind("Z/", 0) != 0) throw std::invalid_argument("bad summand '" + text + "'");
    BigInt order;
    try {
      order = BigInt(text.substr(2));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("bad summand '" + text + "'");
    }
    int e = 0;
    while (order > 1 && order % p.value() == 0) {
      order /= p.value();
      ++e;
    }
    if (order != 1 || e == 0) {
      throw std::invalid_argument("summand order in '" + text + "' is not a positive power of " +
                                  std::to_string(p.value()));
    }
    return torsion(e);
  }

 private:
  explicit CyclicSummand(int e) : exponent_(e) {}
  int exponent_;
};

/// Summands of coker(M: Z_(p)^cols -> Z_(p)^rows), sorted; trivial ones omitted.
inline std::vector<CyclicSummand> cokernel_decomposition(const LocalMatrix& M) {
  const auto snf = smith_normal_form(M);
  std::vector<CyclicSummand> out;
  for (std::size_t i = snf.rank(); i < M.rows(); ++i) out.push_back(CyclicSummand::free());
  for (int e : snf.exponents) {
    if (e > 0) out.push_back(CyclicSummand::torsion(e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Basis (as columns) of ker M; the basis spans a direct summand of the source.
inline LocalMatrix kernel_basis(const LocalMatrix& M) {
  const auto snf = smith_normal_form(M);
  return snf.V.column_block(snf.rank(), M.cols() - snf.rank());
}

/// Some x with M x = b over Z_(p), if one exists. b may have several columns.
inline std::optional<LocalMatrix> solve(const LocalMatrix& M, const LocalMatrix& b) {
  if (b.rows() != M.rows()) throw std::invalid_argument("solve: shape mismatch");
  const auto snf = smith_normal_form(M);
  const Prime p = M.prime();
  const LocalMatrix ub = snf.U * b;
  LocalMatrix y(p, M.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i < snf.rank()) {
        const LocalScalar d = snf.D(i, i);
        if (!d.divides(ub(i, j))) return std::nullopt;
        y(i, j) = ub(i, j).exact_div(d);
      } else if (!ub(i, j).is_zero()) {
        return std::nullopt;
      }
    }
  }
  return snf.V * y;
}

/// Rank of M over the fraction field.
inline std::size_t rank(const LocalMatrix& M) { return smith_normal_form(M).rank(); }

}  // namespace nucleus
