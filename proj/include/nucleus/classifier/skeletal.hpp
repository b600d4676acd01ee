#pragma once

// Homotopy data of skeleta as presented Z_(p)-modules: the monomorphism
// test, the nuclear condition on attaching maps, its Hurewicz-zero
// counterpart, and the cell-by-cell nuclear construction.

#include "nucleus/chain_complex.hpp"
#include "nucleus/fp_linalg.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nucleus {

/// Z_(p)^generators / (column span of relations); relations is generators x r.
struct Presentation {
  std::size_t generators;
  LocalMatrix relations;

  static Presentation free(Prime p, std::size_t n) { return {n, LocalMatrix(p, n, 0)}; }

  void validate(Prime p) const {
    if (relations.prime() != p) throw std::invalid_argument("presentation over the wrong prime");
    if (relations.rows() != generators) {
      throw std::invalid_argument("presentation has " + std::to_string(generators) + " generators but relation matrix " +
                                  relations.shape());
    }
  }

  /// Cyclic decomposition of the presented module.
  std::vector<CyclicSummand> summands() const { return cokernel_decomposition(relations); }
};

/// pi_n(J_n) = Z_(p)^c -> pi_n(X_n); column i is the class attaching the i-th (n+1)-cell.
struct AttachingStage {
  int degree;
  Presentation skeleton_homotopy;
  LocalMatrix attaching;  // generators x c
};

/// Mod-p Hurewicz map pi_n(X_n) -> H_n(X_n; F_p), one column per generator.
struct HurewiczStage {
  int degree;
  Presentation skeleton_homotopy;
  FpMatrix h;
};

struct SkeletalHomotopyData {
  std::vector<AttachingStage> attaching;
  std::vector<HurewiczStage> hurewicz;

  bool empty() const { return attaching.empty() && hurewicz.empty(); }

  SkeletalHomotopyData shifted(int k) const {
    SkeletalHomotopyData out = *this;
    for (auto& s : out.attaching) s.degree += k;
    for (auto& s : out.hurewicz) s.degree += k;
    return out;
  }
};

namespace detail {

/// Columns spanning {x : M x in im R}.
inline LocalMatrix preimage_of_span(const LocalMatrix& M, const LocalMatrix& R) {
  const LocalMatrix K = kernel_basis(LocalMatrix::hstack(M, R));
  return K.row_block(0, M.cols());
}

inline bool all_divisible_by_p(const LocalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).valuation() < 1) return false;
  return true;
}

}  // namespace detail

/// Per-degree map f_*: pi_n(X) -> pi_n(Y) against presentations.
struct MonoDegree {
  int degree;
  Presentation source;
  Presentation target;
  LocalMatrix map;  // target.generators x source.generators
};

struct MonoCheckInput {
  std::vector<MonoDegree> degrees;
};

/// f_* injective in every degree, and f_* (x) F_p injective in degree n0.
inline bool mono_check(const MonoCheckInput& f, int n0) {
  for (const auto& d : f.degrees) {
    const Prime p = d.map.prime();
    d.source.validate(p);
    d.target.validate(p);
    if (d.map.rows() != d.target.generators || d.map.cols() != d.source.generators) {
      throw std::invalid_argument("map in degree " + std::to_string(d.degree) + " has shape " + d.map.shape());
    }
    if (!solve(d.target.relations, d.map * d.source.relations)) {
      throw std::invalid_argument("map in degree " + std::to_string(d.degree) + " does not respect relations");
    }
    // Integral injectivity: f x in im R_Y forces x in im R_X.
    const LocalMatrix pre = detail::preimage_of_span(d.map, d.target.relations);
    if (pre.cols() > 0 && !solve(d.source.relations, pre)) return false;

    if (d.degree == n0) {
      const FpMatrix fbar = d.map.mod_p();
      const FpMatrix rx = d.source.relations.mod_p(), ry = d.target.relations.mod_p();
      FpSpan image_x(p.value(), d.source.generators);
      for (std::size_t j = 0; j < rx.cols(); ++j) {
        std::vector<std::uint32_t> v(rx.rows());
        for (std::size_t i = 0; i < rx.rows(); ++i) v[i] = rx(i, j);
        image_x.insert(v);
      }
      for (const auto& v : FpMatrix::hstack(fbar, ry).nullspace()) {
        std::vector<std::uint32_t> x(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d.source.generators));
        if (!image_x.contains(x)) return false;
      }
    }
  }
  return true;
}

struct NuclearTestResult {
  bool nuclear;
  std::optional<int> failing_degree;
};

/// Ker(j_*: pi_n(J_n) -> pi_n(X_n)) lies in p pi_n(J_n) for every stage.
inline NuclearTestResult nuclear_test(const SkeletalHomotopyData& d, int n0) {
  for (const auto& s : d.attaching) {
    if (s.degree < n0) continue;
    const Prime p = s.attaching.prime();
    s.skeleton_homotopy.validate(p);
    if (s.attaching.rows() != s.skeleton_homotopy.generators) {
      throw std::invalid_argument("attaching matrix in degree " + std::to_string(s.degree) + " has shape " +
                                  s.attaching.shape());
    }
    const LocalMatrix ker = detail::preimage_of_span(s.attaching, s.skeleton_homotopy.relations);
    if (!detail::all_divisible_by_p(ker)) return {false, s.degree};
  }
  return {true, std::nullopt};
}

/// The mod-p Hurewicz maps of the skeleta vanish above n0.
inline NuclearTestResult skeletal_hurewicz_zero(const SkeletalHomotopyData& d, int n0) {
  for (const auto& s : d.hurewicz) {
    if (s.h.cols() != s.skeleton_homotopy.generators) {
      throw std::invalid_argument("Hurewicz matrix in degree " + std::to_string(s.degree) + " has the wrong width");
    }
    if (!(s.h * s.skeleton_homotopy.relations.mod_p()).is_zero()) {
      throw std::invalid_argument("Hurewicz matrix in degree " + std::to_string(s.degree) +
                                  " does not vanish on relations");
    }
    if (s.degree > n0 && !s.h.is_zero()) return {false, s.degree};
  }
  return {true, std::nullopt};
}

/// Minimal subset of the given generators of a submodule K of the presented
/// module P that still generates K: a basis of K / pK picked greedily.
inline std::vector<std::size_t> minimal_generator_subset(const Presentation& P, const LocalMatrix& kernel) {
  const Prime p = kernel.prime();
  const LocalMatrix S = LocalMatrix::hstack(kernel, P.relations);
  const auto snf = smith_normal_form(S);
  const std::size_t r = snf.rank();
  // Basis of the span of S: b_i = p^e_i U_inv e_i. Coordinates of S's columns
  // are the first r rows of V_inv (D V_inv = U S).
  const LocalMatrix coords = snf.V_inv.row_block(0, r);
  FpSpan span(p.value(), r);
  for (std::size_t j = kernel.cols(); j < S.cols(); ++j) {
    std::vector<std::uint32_t> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = coords(i, j).mod_p();
    span.insert(v);
  }
  std::vector<std::size_t> chosen;
  for (std::size_t j = 0; j < kernel.cols(); ++j) {
    std::vector<std::uint32_t> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = coords(i, j).mod_p();
    if (span.insert(v)) chosen.push_back(j);
  }
  return chosen;
}

/// Raised when the homotopy oracle cannot supply a degree.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What the construction needs to know about pi_n of the current skeleton.
struct OracleStage {
  Presentation skeleton_homotopy;  // pi_n(X_n)
  LocalMatrix kernel;              // columns generate ker(pi_n(X_n) -> pi_n(Y))
};

class HomotopyOracle {
 public:
  virtual ~HomotopyOracle() = default;
  virtual Prime prime() const = 0;
  virtual int bottom_degree() const = 0;
  /// nullopt when degree n is out of the oracle's reach.
  virtual std::optional<OracleStage> stage(int n) = 0;
  /// Attaches (n+1)-cells along the given classes of pi_n(X_n) (one per column).
  virtual void attach(int n, const LocalMatrix& classes) = 0;
  virtual CellComplex skeleton() const = 0;
};

struct NuclearConstruction {
  CellComplex complex;
  SkeletalHomotopyData data;
};

/// Starting from one bottom cell, attaches at each degree a minimal set of
/// cells killing ker(pi_n(X_n) -> pi_n(Y)). Minimality of the attaching
/// classes modulo p is what makes the result nuclear.
inline NuclearConstruction nuclear_construct(HomotopyOracle& oracle, int N) {
  SkeletalHomotopyData data;
  for (int n = oracle.bottom_degree(); n <= N; ++n) {
    auto st = oracle.stage(n);
    if (!st) throw TruncationError("homotopy oracle has no data in degree " + std::to_string(n));
    const auto chosen = minimal_generator_subset(st->skeleton_homotopy, st->kernel);
    LocalMatrix classes(oracle.prime(), st->skeleton_homotopy.generators, chosen.size());
    for (std::size_t c = 0; c < chosen.size(); ++c)
      for (std::size_t i = 0; i < classes.rows(); ++i) classes(i, c) = st->kernel(i, chosen[c]);
    if (!chosen.empty() && n + 1 > N) {
      throw TruncationError("cells are needed in degree " + std::to_string(n + 1) + ", above the bound " +
                            std::to_string(N));
    }
    if (!chosen.empty()) oracle.attach(n, classes);
    data.attaching.push_back({n, st->skeleton_homotopy, classes});
  }
  return {oracle.skeleton(), std::move(data)};
}

/// The chain-level model: pi_n = H_n, maps are chain maps. The target is a
/// chain complex Y; the bottom cell maps to a chosen cycle of Y.
class ChainLevelOracle : public HomotopyOracle {
 public:
  ChainLevelOracle(CellComplex target, LocalMatrix bottom_cycle)
      : p_(target.prime()), n0_(target.hurewicz_dim()), target_(std::move(target)) {
    if (bottom_cycle.rows() != target_.rank(n0_) || bottom_cycle.cols() != 1) {
      throw std::invalid_argument("bottom cycle must be a column over the target's bottom cells");
    }
    cells_[n0_] = {"e." + std::to_string(n0_) + ".0"};
    f_.emplace(n0_, std::move(bottom_cycle));
  }

  /// Target realized minimally from H; the bottom cell picks summand `index` of H_{n0}.
  static ChainLevelOracle for_module(const GradedModule& H, std::size_t index) {
    CellComplex Y = minimalize(H);
    const int n0 = Y.hurewicz_dim();
    if (index >= H.at(n0).size()) throw std::invalid_argument("no summand with that index in the bottom degree");
    LocalMatrix z(H.prime, Y.rank(n0), 1);
    z(index, 0) = LocalScalar(H.prime, 1);
    return ChainLevelOracle(std::move(Y), std::move(z));
  }

  Prime prime() const override { return p_; }
  int bottom_degree() const override { return n0_; }

  std::optional<OracleStage> stage(int n) override {
    if (!target_.reliable(n) || !target_.reliable(n + 1)) return std::nullopt;
    const CellComplex X = skeleton();
    const LocalMatrix Z = kernel_basis(X.differential(n));
    const LocalMatrix image = component(n) * Z;
    const LocalMatrix ker = detail::preimage_of_span(image, target_.differential(n + 1));
    return OracleStage{Presentation::free(p_, Z.cols()), ker};
  }

  void attach(int n, const LocalMatrix& classes) override {
    const CellComplex X = skeleton();
    const LocalMatrix Z = kernel_basis(X.differential(n));
    const LocalMatrix boundary = Z * classes;
    const auto lift = solve(target_.differential(n + 1), component(n) * boundary);
    if (!lift) throw std::logic_error("attaching class is not in the kernel");
    auto& names = cells_[n + 1];
    const std::size_t old = names.size();
    for (std::size_t c = 0; c < classes.cols(); ++c) names.push_back("e." + std::to_string(n + 1) + "." + std::to_string(old + c));
    d_.insert_or_assign(n + 1, d_.count(n + 1) ? LocalMatrix::hstack(d_.at(n + 1), boundary) : boundary);
    f_.insert_or_assign(n + 1, f_.count(n + 1) ? LocalMatrix::hstack(f_.at(n + 1), *lift) : *lift);
    top_ = std::max(top_, n + 1);
  }

  CellComplex skeleton() const override { return CellComplex(p_, n0_, top_, false, cells_, d_); }

  /// The comparison map skeleton() -> target.
  ChainMap map() const { return ChainMap(skeleton(), target_, f_); }
  const CellComplex& target() const { return target_; }

 private:
  LocalMatrix component(int n) const {
    auto it = f_.find(n);
    if (it != f_.end()) return it->second;
    return LocalMatrix(p_, target_.rank(n), cells_.count(n) ? cells_.at(n).size() : 0);
  }

  Prime p_;
  int n0_;
  int top_ = n0_;
  CellComplex target_;
  std::map<int, std::vector<std::string>> cells_;
  std::map<int, LocalMatrix> d_;
  std::map<int, LocalMatrix> f_;
};

/// H_n(C) presented as Z^k / diag(p^e_i), with the chosen cycle basis.
struct HomologyPresentation {
  Presentation presentation;
  LocalMatrix cycles;
};

inline HomologyPresentation homology_presentation(const CellComplex& C, int n) {
  const auto b = detail::homology_basis(C, n);
  const Prime p = C.prime();
  LocalMatrix R(p, b.summands.size(), 0);
  for (std::size_t i = 0; i < b.summands.size(); ++i) {
    if (b.summands[i].is_free()) continue;
    LocalMatrix col(p, b.summands.size(), 1);
    col(i, 0) = LocalScalar::power_of_p(p, b.summands[i].exponent());
    R = LocalMatrix::hstack(R, col);
  }
  return {{b.summands.size(), R}, b.cycles};
}

/// f_* on H_n in the coordinates of homology_presentation.
inline MonoDegree induced_on_homology(const ChainMap& f, int n) {
  const auto src = homology_presentation(f.source(), n);
  const auto tgt = homology_presentation(f.target(), n);
  const Prime p = f.source().prime();
  const LocalMatrix images = f.component(n) * src.cycles;
  const LocalMatrix basis = LocalMatrix::hstack(tgt.cycles, f.target().differential(n + 1));
  LocalMatrix m(p, tgt.presentation.generators, src.presentation.generators);
  if (images.cols() > 0) {
    const auto coords = solve(basis, images);
    if (!coords) throw std::logic_error("image of a cycle is not a cycle");
    m = coords->row_block(0, tgt.presentation.generators);
  }
  return {n, src.presentation, tgt.presentation, m};
}

}  // namespace nucleus
