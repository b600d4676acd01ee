#pragma once

// Cellular chain complexes of free Z_(p)-modules: homology, minimality, and
// the construction of a minimal complex with a comparison chain map.

#include "nucleus/graded_module.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nucleus {

class CellComplex {
 public:
  /// differentials[n] is d_n : C_n -> C_{n-1}, shaped rank(n-1) x rank(n).
  /// Missing entries are zero maps.
  CellComplex(Prime p, int hurewicz_dim, int top_degree, bool truncated,
              std::map<int, std::vector<std::string>> cells,
              std::map<int, LocalMatrix> differentials = {})
      : p_(p),
        n0_(hurewicz_dim),
        top_(top_degree),
        truncated_(truncated),
        cells_(std::move(cells)),
        d_(std::move(differentials)) {
    validate();
  }

  /// One cell in degree n.
  static CellComplex sphere(Prime p, int n) {
    return CellComplex(p, n, n, false, {{n, {"e" + std::to_string(n)}}});
  }

  /// Cells j (degree n) and k (degree n+1) with d(k) = p^q j.
  static CellComplex moore(Prime p, int q, int n) {
    LocalMatrix d(p, 1, 1);
    d(0, 0) = LocalScalar::power_of_p(p, q);
    return CellComplex(p, n, n + 1, false, {{n, {"j"}}, {n + 1, {"k"}}}, {{n + 1, d}});
  }

  Prime prime() const { return p_; }
  int hurewicz_dim() const { return n0_; }
  int top_degree() const { return top_; }
  bool truncated() const { return truncated_; }

  const std::vector<std::string>& cells(int n) const {
    static const std::vector<std::string> none;
    auto it = cells_.find(n);
    return it == cells_.end() ? none : it->second;
  }
  const std::map<int, std::vector<std::string>>& all_cells() const { return cells_; }
  std::size_t rank(int n) const { return cells(n).size(); }

  std::size_t cell_count() const {
    std::size_t total = 0;
    for (const auto& [d, c] : cells_) total += c.size();
    return total;
  }

  LocalMatrix differential(int n) const {
    auto it = d_.find(n);
    if (it != d_.end()) return it->second;
    return LocalMatrix(p_, rank(n - 1), rank(n));
  }

  /// Degrees whose homology cannot be trusted because of truncation.
  std::set<int> unreliable_degrees() const {
    if (!truncated_) return {};
    return {top_ - 1, top_};
  }
  bool reliable(int n) const { return !unreliable_degrees().contains(n); }

  bool is_hurewicz_complex() const { return rank(n0_) == 1; }

 private:
  void validate() {
    if (top_ < n0_) throw std::invalid_argument("top degree below Hurewicz dimension");
    for (const auto& [n, c] : cells_) {
      if (c.empty()) continue;
      if (n < n0_) throw std::invalid_argument("cell in degree " + std::to_string(n) + " below n0");
      if (n > top_) throw std::invalid_argument("cell in degree " + std::to_string(n) + " above top degree");
    }
    for (const auto& [n, d] : d_) {
      if (d.prime() != p_) throw std::invalid_argument("differential over the wrong prime");
      if (d.rows() != rank(n - 1) || d.cols() != rank(n)) {
        throw std::invalid_argument("differential d_" + std::to_string(n) + " has shape " + d.shape() +
                                    ", expected " + std::to_string(rank(n - 1)) + "x" +
                                    std::to_string(rank(n)));
      }
    }
    for (const auto& [n, d] : d_) {
      if (!(differential(n - 1) * d).is_zero()) {
        throw std::invalid_argument("d_" + std::to_string(n - 1) + " o d_" + std::to_string(n) + " != 0");
      }
    }
  }

  Prime p_;
  int n0_;
  int top_;
  bool truncated_;
  std::map<int, std::vector<std::string>> cells_;
  std::map<int, LocalMatrix> d_;
};

/// Per-degree matrices f_n : source_n -> target_n commuting with differentials.
class ChainMap {
 public:
  ChainMap(CellComplex source, CellComplex target, std::map<int, LocalMatrix> components)
      : source_(std::move(source)), target_(std::move(target)), f_(std::move(components)) {
    for (const auto& [n, m] : f_) {
      if (m.rows() != target_.rank(n) || m.cols() != source_.rank(n)) {
        throw std::invalid_argument("chain map component " + std::to_string(n) + " has shape " + m.shape());
      }
    }
    const int lo = std::min(source_.hurewicz_dim(), target_.hurewicz_dim());
    const int hi = std::max(source_.top_degree(), target_.top_degree());
    for (int n = lo; n <= hi + 1; ++n) {
      if (!(target_.differential(n) * component(n) == component(n - 1) * source_.differential(n))) {
        throw std::invalid_argument("chain map does not commute with d in degree " + std::to_string(n));
      }
    }
  }

  const CellComplex& source() const { return source_; }
  const CellComplex& target() const { return target_; }
  const std::map<int, LocalMatrix>& components() const { return f_; }

  LocalMatrix component(int n) const {
    auto it = f_.find(n);
    if (it != f_.end()) return it->second;
    return LocalMatrix(source_.prime(), target_.rank(n), source_.rank(n));
  }

 private:
  CellComplex source_;
  CellComplex target_;
  std::map<int, LocalMatrix> f_;
};

namespace detail {

/// Cycle generators of H_n(C) adapted to its cyclic decomposition.
struct HomologyBasis {
  std::vector<CyclicSummand> summands;  // sorted: free first, torsion ascending
  LocalMatrix cycles;                   // rank(n) x summands.size()
  LocalMatrix bounding;                 // rank(n+1) x summands.size(); column i has
                                        // d(bounding_i) = p^e_i cycles_i for torsion i
};

inline HomologyBasis homology_basis(const CellComplex& C, int n) {
  const Prime p = C.prime();
  const LocalMatrix dn = C.differential(n);
  const LocalMatrix dn1 = C.differential(n + 1);

  const auto outer = smith_normal_form(dn);
  const std::size_t r = outer.rank();
  const std::size_t k = C.rank(n) - r;
  const LocalMatrix K = outer.V.column_block(r, k);
  const LocalMatrix B = (outer.V_inv * dn1).row_block(r, k);

  const auto inner = smith_normal_form(B);
  const LocalMatrix G = K * inner.U_inv;

  std::vector<std::size_t> order;
  for (std::size_t i = inner.rank(); i < k; ++i) order.push_back(i);
  for (std::size_t i = 0; i < inner.rank(); ++i) {
    if (inner.exponents[i] > 0) order.push_back(i);
  }

  HomologyBasis out{{}, LocalMatrix(p, C.rank(n), order.size()), LocalMatrix(p, C.rank(n + 1), order.size())};
  for (std::size_t c = 0; c < order.size(); ++c) {
    const std::size_t i = order[c];
    for (std::size_t row = 0; row < C.rank(n); ++row) out.cycles(row, c) = G(row, i);
    if (i < inner.rank()) {
      out.summands.push_back(CyclicSummand::torsion(inner.exponents[i]));
      for (std::size_t row = 0; row < C.rank(n + 1); ++row) out.bounding(row, c) = inner.V(row, i);
    } else {
      out.summands.push_back(CyclicSummand::free());
    }
  }
  return out;
}

}  // namespace detail

/// H_n = ker d_n / im d_{n+1} for every degree of C. Degrees next to a
/// truncation boundary are reported as unreliable and left empty.
inline GradedModule homology(const CellComplex& C) {
  GradedModule H(C.prime());
  for (int n = C.hurewicz_dim(); n <= C.top_degree(); ++n) {
    if (!C.reliable(n)) {
      H.unreliable.insert(n);
      continue;
    }
    const std::size_t cn = C.rank(n);
    if (cn == 0) continue;
    const std::size_t rn = rank(C.differential(n));
    const auto outgoing = smith_normal_form(C.differential(n + 1));
    for (std::size_t i = 0; i < cn - rn - outgoing.rank(); ++i) H.add(n, CyclicSummand::free());
    for (int e : outgoing.exponents) {
      if (e > 0) H.add(n, CyclicSummand::torsion(e));
    }
  }
  return H;
}

/// Every differential entry is divisible by p.
inline bool is_minimal(const CellComplex& C) {
  for (const auto& [n, cells] : C.all_cells()) {
    if (C.differential(n).min_valuation() < 1) return false;
  }
  return true;
}

/// For each n, compares dim H_n(X_n; F_p) with dim H_n(X_{n+1}; F_p), where X_n
/// is the degree <= n truncation. The induced map is onto, so equal
/// dimensions mean it is an isomorphism.
inline bool skeletal_inclusion_check(const CellComplex& C) {
  for (int n = C.hurewicz_dim(); n <= C.top_degree(); ++n) {
    const std::size_t cn = C.rank(n);
    const std::size_t cycles = cn - C.differential(n).mod_p().rank();
    const std::size_t in_next_skeleton = cycles - C.differential(n + 1).mod_p().rank();
    if (cycles != in_next_skeleton) return false;
  }
  return true;
}

inline std::string j_label(int n, std::size_t i) { return "j." + std::to_string(n) + "." + std::to_string(i); }
inline std::string k_label(int n, std::size_t i) { return "k." + std::to_string(n) + "." + std::to_string(i); }

/// The minimal complex realizing H: a cell j.n.i per summand of H_n and, for
/// torsion summands of order p^e, a cell k.n.i in degree n+1 with
/// d(k.n.i) = p^e j.n.i.
inline CellComplex minimalize(const GradedModule& H) {
  const auto bottom = H.bottom_degree();
  if (!bottom) throw std::invalid_argument("minimalize: module is zero, no bottom degree");
  const Prime p = H.prime;
  std::map<int, std::vector<std::string>> cells;
  std::map<int, std::vector<std::pair<std::size_t, int>>> torsion;  // degree -> (index, exponent)
  int top = *bottom;
  for (const auto& [n, summands] : H.groups) {
    for (std::size_t i = 0; i < summands.size(); ++i) {
      cells[n].push_back(j_label(n, i));
      top = std::max(top, n);
      if (!summands[i].is_free()) torsion[n].emplace_back(i, summands[i].exponent());
    }
  }
  for (const auto& [n, list] : torsion) {
    for (const auto& [i, e] : list) cells[n + 1].push_back(k_label(n, i));
    top = std::max(top, n + 1);
  }
  std::map<int, LocalMatrix> d;
  for (const auto& [n, list] : torsion) {
    const std::size_t rows = cells[n].size(), cols = cells[n + 1].size();
    LocalMatrix m(p, rows, cols);
    const std::size_t first_k = cols - list.size();
    for (std::size_t t = 0; t < list.size(); ++t) {
      m(list[t].first, first_k + t) = LocalScalar::power_of_p(p, list[t].second);
    }
    d.emplace(n + 1, m);
  }
  bool truncated = !H.unreliable.empty();
  if (truncated) top = std::max(top, *H.unreliable.rbegin());
  return CellComplex(p, *bottom, top, truncated, std::move(cells), std::move(d));
}

struct MinimalModel {
  CellComplex complex;
  ChainMap map;  // complex -> input, a quasi-isomorphism in reliable degrees
};

/// Minimal complex for homology(C) together with a chain map into C.
inline MinimalModel minimalize_with_map(const CellComplex& C) {
  const Prime p = C.prime();
  std::map<int, detail::HomologyBasis> bases;
  GradedModule H(p);
  for (int n = C.hurewicz_dim(); n <= C.top_degree(); ++n) {
    if (!C.reliable(n)) {
      H.unreliable.insert(n);
      continue;
    }
    auto basis = detail::homology_basis(C, n);
    for (auto s : basis.summands) H.add(n, s);
    bases.emplace(n, std::move(basis));
  }
  if (H.is_zero()) throw std::invalid_argument("minimalize: complex has no homology in reliable degrees");

  // Unreliable degrees of H carry the truncation flag and top degree over to X.
  CellComplex X = minimalize(H);

  std::map<int, LocalMatrix> f;
  for (const auto& [n, cells] : X.all_cells()) {
    LocalMatrix m(p, C.rank(n), cells.size());
    std::size_t col = 0;
    if (auto it = bases.find(n); it != bases.end()) {
      for (std::size_t i = 0; i < it->second.summands.size(); ++i, ++col) {
        for (std::size_t r = 0; r < C.rank(n); ++r) m(r, col) = it->second.cycles(r, i);
      }
    }
    if (auto it = bases.find(n - 1); it != bases.end()) {
      const auto& b = it->second;
      for (std::size_t i = 0; i < b.summands.size(); ++i) {
        if (b.summands[i].is_free()) continue;
        for (std::size_t r = 0; r < C.rank(n); ++r) m(r, col) = b.bounding(r, i);
        ++col;
      }
    }
    f.emplace(n, std::move(m));
  }
  ChainMap map(X, C, std::move(f));
  return MinimalModel{std::move(X), std::move(map)};
}

/// Shifts every cell up by k degrees.
inline CellComplex suspend(const CellComplex& C, int k) {
  std::map<int, std::vector<std::string>> cells;
  std::map<int, LocalMatrix> d;
  for (const auto& [n, c] : C.all_cells()) {
    cells[n + k] = c;
    d.emplace(n + k, C.differential(n));
  }
  return CellComplex(C.prime(), C.hurewicz_dim() + k, C.top_degree() + k, C.truncated(), std::move(cells),
                     std::move(d));
}

/// Cone(f)_n = X_{n-1} (+) Y_n with d(x, y) = (-dx, f x + dy). Acyclic iff f
/// is a quasi-isomorphism.
inline CellComplex mapping_cone(const ChainMap& f) {
  const auto& X = f.source();
  const auto& Y = f.target();
  const Prime p = X.prime();
  const int lo = std::min(X.hurewicz_dim() + 1, Y.hurewicz_dim());
  const int hi = std::max(X.top_degree() + 1, Y.top_degree());
  std::map<int, std::vector<std::string>> cells;
  for (int n = lo; n <= hi; ++n) {
    for (const auto& c : X.cells(n - 1)) cells[n].push_back("s:" + c);
    for (const auto& c : Y.cells(n)) cells[n].push_back("t:" + c);
  }
  std::map<int, LocalMatrix> d;
  for (int n = lo + 1; n <= hi; ++n) {
    const std::size_t xs = X.rank(n - 1), ys = Y.rank(n), xt = X.rank(n - 2), yt = Y.rank(n - 1);
    LocalMatrix m(p, xt + yt, xs + ys);
    const LocalMatrix dx = -X.differential(n - 1);
    const LocalMatrix fx = f.component(n - 1);
    const LocalMatrix dy = Y.differential(n);
    for (std::size_t i = 0; i < xt; ++i)
      for (std::size_t j = 0; j < xs; ++j) m(i, j) = dx(i, j);
    for (std::size_t i = 0; i < yt; ++i) {
      for (std::size_t j = 0; j < xs; ++j) m(xt + i, j) = fx(i, j);
      for (std::size_t j = 0; j < ys; ++j) m(xt + i, xs + j) = dy(i, j);
    }
    d.emplace(n, std::move(m));
  }
  return CellComplex(p, lo, hi, X.truncated() || Y.truncated(), std::move(cells), std::move(d));
}

}  // namespace nucleus
