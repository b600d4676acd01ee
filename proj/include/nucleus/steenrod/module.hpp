#pragma once

// Graded modules over the Steenrod algebra, held degreewise up to a bound N.

#include "nucleus/fp_linalg.hpp"
#include "nucleus/steenrod/algebra.hpp"

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace nucleus {

/// Each letter acting from degree t is a dim(t + |L|) x dim(t) matrix.
/// Degrees outside [bottom, top] are zero.
class TruncatedAModule {
 public:
  TruncatedAModule(Prime p, int bottom, int top, int margin) : p_(p), bottom_(bottom), top_(top), margin_(margin) {}

  Prime prime() const { return p_; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }
  /// Degrees above top - margin may miss information from above the bound.
  int margin() const { return margin_; }
  int reliable_through() const { return top_ - margin_; }

  std::size_t dim(int t) const {
    auto it = labels_.find(t);
    return it == labels_.end() ? 0 : it->second.size();
  }
  const std::vector<std::string>& labels(int t) const {
    static const std::vector<std::string> none;
    auto it = labels_.find(t);
    return it == labels_.end() ? none : it->second;
  }
  void set_labels(int t, std::vector<std::string> names) {
    if (t < bottom_ || t > top_) throw std::invalid_argument("basis degree outside module range");
    labels_[t] = std::move(names);
  }

  void set_action(Letter l, int t, FpMatrix m) {
    const int target = t + l.degree(p_.value());
    if (m.rows() != dim(target) || m.cols() != dim(t)) {
      throw std::invalid_argument("action of " + l.to_string() + " from degree " + std::to_string(t) +
                                  " has the wrong shape");
    }
    actions_.insert_or_assign({l, t}, std::move(m));
  }

  /// Matrix of a letter from degree t. Zero when nothing was recorded.
  FpMatrix act(Letter l, int t) const {
    auto it = actions_.find({l, t});
    if (it != actions_.end()) return it->second;
    return FpMatrix(p_.value(), dim(t + l.degree(p_.value())), dim(t));
  }

  /// Matrix of a homogeneous element of degree `degree` from degree t;
  /// nullopt if the target lies above the bound.
  std::optional<FpMatrix> act(const SteenrodAlgebra& A, const SteenrodElement& x, int degree, int t) const {
    if (t + degree > top_) return std::nullopt;
    FpMatrix total(p_.value(), dim(t + degree), dim(t));
    for (const auto& [m, c] : x.terms) {
      if (A.degree(m) != degree) throw std::invalid_argument("element is not homogeneous of the stated degree");
      FpMatrix acc = FpMatrix::identity(p_.value(), dim(t));
      int deg = t;
      for (auto it = m.rbegin(); it != m.rend(); ++it) {
        acc = act(*it, deg) * acc;
        deg += it->degree(p_.value());
      }
      for (std::size_t i = 0; i < acc.rows(); ++i) acc.scale_row(i, c);
      total = total + acc;
    }
    return total;
  }

  const std::map<std::pair<Letter, int>, FpMatrix>& actions() const { return actions_; }

  /// The same module with every degree raised by k.
  TruncatedAModule shifted(int k) const {
    TruncatedAModule out(p_, bottom_ + k, top_ + k, margin_);
    for (const auto& [t, l] : labels_) out.labels_[t + k] = l;
    for (const auto& [key, m] : actions_) out.actions_.emplace(std::make_pair(key.first, key.second + k), m);
    return out;
  }

  std::optional<int> bottom_nonzero() const {
    for (const auto& [t, l] : labels_) {
      if (!l.empty()) return t;
    }
    return std::nullopt;
  }

 private:
  Prime p_;
  int bottom_;
  int top_;
  int margin_;
  std::map<int, std::vector<std::string>> labels_;
  std::map<std::pair<Letter, int>, FpMatrix> actions_;
};

struct ModuleGenerator {
  std::string name;
  int degree;
};

/// One relation: sum of (algebra element) * (generator index).
using ModuleRelation = std::vector<std::pair<SteenrodElement, std::size_t>>;

struct FPModuleSpec {
  Prime prime;
  std::vector<ModuleGenerator> generators;
  std::vector<ModuleRelation> relations;
};

/// Parses "Sq2 Sq2 g0 + Sq3 Sq1 g0": the last token of each term names a
/// generator, the rest is an algebra element as in SteenrodAlgebra::parse.
inline ModuleRelation parse_relation(const SteenrodAlgebra& A, const std::vector<ModuleGenerator>& gens,
                                     const std::string& text) {
  ModuleRelation rel;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t plus = text.find('+', start);
    if (plus == std::string::npos) plus = text.size();
    std::string term = text.substr(start, plus - start);
    const auto end = term.find_last_not_of(" \t");
    if (end == std::string::npos) throw std::invalid_argument("empty term in relation '" + text + "'");
    term = term.substr(0, end + 1);
    const auto space = term.find_last_of(" \t");
    const std::string gen = space == std::string::npos ? term : term.substr(space + 1);
    const std::string word = space == std::string::npos ? "1" : term.substr(0, space);
    std::size_t idx = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].name == gen) idx = i;
    }
    if (idx == gens.size()) throw std::invalid_argument("unknown generator '" + gen + "' in relation '" + text + "'");
    rel.emplace_back(A.parse(word), idx);
    start = plus + 1;
  }
  return rel;
}

/// Degree of a relation; all terms must agree.
inline std::optional<int> relation_degree(const SteenrodAlgebra& A, const FPModuleSpec& spec, const ModuleRelation& r) {
  std::optional<int> deg;
  for (const auto& [x, g] : r) {
    for (const auto& [m, c] : x.terms) {
      const int d = A.degree(m) + spec.generators[g].degree;
      if (deg && *deg != d) throw std::invalid_argument("relation is not homogeneous");
      deg = d;
    }
  }
  return deg;
}

namespace detail {

/// Degree t of the free module: (generator index, admissible monomial).
struct FreeDegree {
  std::vector<std::pair<std::size_t, Monomial>> basis;
  std::map<std::pair<std::size_t, Monomial>, std::size_t> index;
};

inline FreeDegree free_degree(const SteenrodAlgebra& A, const FPModuleSpec& spec, int t) {
  FreeDegree f;
  for (std::size_t g = 0; g < spec.generators.size(); ++g) {
    for (auto& m : A.basis(t - spec.generators[g].degree)) {
      f.index.emplace(std::pair{g, m}, f.basis.size());
      f.basis.emplace_back(g, std::move(m));
    }
  }
  return f;
}

inline std::vector<std::uint32_t> free_vector(const FreeDegree& f, unsigned p, const SteenrodElement& x, std::size_t g,
                                              std::vector<std::uint32_t> into = {}) {
  if (into.empty()) into.assign(f.basis.size(), 0);
  for (const auto& [m, c] : x.terms) {
    into[f.index.at({g, m})] = static_cast<std::uint32_t>((into[f.index.at({g, m})] + c) % p);
  }
  return into;
}

}  // namespace detail

/// Degreewise quotient of the free module on the generators by the A-span of
/// the relations, for degrees up to N.
inline TruncatedAModule realize(const FPModuleSpec& spec, int N) {
  if (spec.generators.empty()) throw std::invalid_argument("module has no generators");
  const SteenrodAlgebra A(spec.prime);
  const unsigned p = spec.prime.value();
  int bottom = spec.generators.front().degree, top_gen = bottom;
  for (const auto& g : spec.generators) {
    bottom = std::min(bottom, g.degree);
    top_gen = std::max(top_gen, g.degree);
  }
  if (N < top_gen) {
    throw std::invalid_argument("truncation bound " + std::to_string(N) + " is below the top generator degree " +
                                std::to_string(top_gen));
  }
  int margin = 0;
  std::vector<int> rel_degree;
  for (const auto& r : spec.relations) {
    const auto d = relation_degree(A, spec, r);
    rel_degree.push_back(d.value_or(std::numeric_limits<int>::max()));
    for (const auto& [x, g] : r)
      for (const auto& [m, c] : x.terms)
        for (const auto& l : m) margin = std::max(margin, l.degree(p));
  }

  TruncatedAModule M(spec.prime, bottom, N, margin);
  std::map<int, detail::FreeDegree> free;
  std::map<int, FpSpan> killed;
  std::map<int, std::vector<std::size_t>> quotient_cols;
  for (int t = bottom; t <= N; ++t) {
    auto f = detail::free_degree(A, spec, t);
    FpSpan span(p, f.basis.size());
    for (std::size_t r = 0; r < spec.relations.size(); ++r) {
      if (rel_degree[r] > t) continue;
      for (const auto& m : A.basis(t - rel_degree[r])) {
        std::vector<std::uint32_t> v(f.basis.size(), 0);
        for (const auto& [x, g] : spec.relations[r]) {
          v = detail::free_vector(f, p, A.multiply(A.monomial(m), x), g, std::move(v));
        }
        span.insert(std::move(v));
      }
    }
    std::set<std::size_t> pivots(span.pivots().begin(), span.pivots().end());
    std::vector<std::size_t> cols;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < f.basis.size(); ++i) {
      if (pivots.contains(i)) continue;
      cols.push_back(i);
      const auto& [g, m] = f.basis[i];
      names.push_back(m.empty() ? spec.generators[g].name : A.to_string(m) + " " + spec.generators[g].name);
    }
    M.set_labels(t, std::move(names));
    free.emplace(t, std::move(f));
    killed.emplace(t, std::move(span));
    quotient_cols.emplace(t, std::move(cols));
  }

  for (const auto& l : A.letters_up_to(N - bottom)) {
    const int dl = l.degree(p);
    for (int t = bottom; t + dl <= N; ++t) {
      if (M.dim(t) == 0 || M.dim(t + dl) == 0) continue;
      FpMatrix mat(p, M.dim(t + dl), M.dim(t));
      const auto& src = free.at(t);
      const auto& dst = free.at(t + dl);
      const auto& dst_cols = quotient_cols.at(t + dl);
      for (std::size_t j = 0; j < quotient_cols.at(t).size(); ++j) {
        const auto& [g, m] = src.basis[quotient_cols.at(t)[j]];
        Monomial w{l};
        w.insert(w.end(), m.begin(), m.end());
        const auto v = killed.at(t + dl).reduce(detail::free_vector(dst, p, A.reduce(w), g));
        for (std::size_t i = 0; i < dst_cols.size(); ++i) mat(i, j) = v[dst_cols[i]];
      }
      M.set_action(l, t, std::move(mat));
    }
  }
  return M;
}

/// Span of the images of all letters into degree t, i.e. (A^+ M)_t.
inline FpSpan decomposables(const SteenrodAlgebra& A, const TruncatedAModule& M, int t) {
  const unsigned p = M.prime().value();
  FpSpan span(p, M.dim(t));
  for (const auto& l : A.letters_up_to(t - M.bottom())) {
    const int s = t - l.degree(p);
    const FpMatrix m = M.act(l, s);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::vector<std::uint32_t> v(m.rows());
      for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
      span.insert(std::move(v));
    }
  }
  return span;
}

/// dim (M / A^+ M)_t for every degree of M: the dimension of the zeroth
/// Adams row in internal degree t.
struct GeneratorReport {
  std::map<int, std::size_t> dims;  // nonzero degrees only
  int reliable_through;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& [t, d] : dims) n += d;
    return n;
  }
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [t, d] : dims)
      for (std::size_t i = 0; i < d; ++i) out.push_back(t);
    return out;
  }
};

inline GeneratorReport minimal_generators(const TruncatedAModule& M) {
  const SteenrodAlgebra A(M.prime());
  GeneratorReport r{{}, M.reliable_through()};
  for (int t = M.bottom(); t <= M.top(); ++t) {
    const std::size_t d = M.dim(t) - decomposables(A, M, t).dimension();
    if (d > 0) r.dims[t] = d;
  }
  return r;
}

/// Exactly one generator, sitting in the bottom nonzero degree.
inline bool is_monogenic(const TruncatedAModule& M) {
  const auto r = minimal_generators(M);
  const auto b = M.bottom_nonzero();
  return b && r.total() == 1 && r.dims.begin()->first == *b;
}

enum class Decision { yes, no, inconclusive };

inline std::string to_string(Decision d) {
  switch (d) {
    case Decision::yes: return "yes";
    case Decision::no: return "no";
    case Decision::inconclusive: return "inconclusive";
  }
  return "?";
}

struct AtomicReport {
  Decision decision;
  int checked_through;
  std::size_t ideal_dim;  // endomorphisms vanishing in the bottom degree
};

/// Degree-0 endomorphisms of M (as blocks per degree) that commute with the
/// algebra generators, optionally forced to vanish in the bottom degree.
inline std::vector<std::map<int, FpMatrix>> endomorphisms(const TruncatedAModule& M, bool vanish_at_bottom) {
  const SteenrodAlgebra A(M.prime());
  const unsigned p = M.prime().value();
  std::map<int, std::size_t> offset;
  std::size_t vars = 0;
  for (int t = M.bottom(); t <= M.top(); ++t) {
    offset[t] = vars;
    vars += M.dim(t) * M.dim(t);
  }
  auto var = [&](int t, std::size_t i, std::size_t j) { return offset.at(t) + i * M.dim(t) + j; };
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& l : A.indecomposables_up_to(M.top() - M.bottom())) {
    const int dl = l.degree(p);
    for (int t = M.bottom(); t + dl <= M.top(); ++t) {
      const FpMatrix a = M.act(l, t);
      const std::size_t ds = M.dim(t), dt = M.dim(t + dl);
      // (phi_{t+dl} a - a phi_t)(i, j) = 0
      for (std::size_t i = 0; i < dt; ++i) {
        for (std::size_t j = 0; j < ds; ++j) {
          std::vector<std::uint32_t> row(vars, 0);
          for (std::size_t k = 0; k < dt; ++k) {
            auto& x = row[var(t + dl, i, k)];
            x = (x + a(k, j)) % p;
          }
          for (std::size_t k = 0; k < ds; ++k) {
            auto& x = row[var(t, k, j)];
            x = (x + (p - a(i, k)) % p) % p;
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  if (vanish_at_bottom) {
    const int b = M.bottom();
    for (std::size_t i = 0; i < M.dim(b) * M.dim(b); ++i) {
      std::vector<std::uint32_t> row(vars, 0);
      row[offset.at(b) + i] = 1;
      rows.push_back(std::move(row));
    }
  }
  FpMatrix system(p, rows.size(), vars);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < vars; ++c) system(r, c) = rows[r][c];
  std::vector<std::map<int, FpMatrix>> out;
  for (const auto& v : system.nullspace()) {
    std::map<int, FpMatrix> phi;
    for (int t = M.bottom(); t <= M.top(); ++t) {
      FpMatrix block(p, M.dim(t), M.dim(t));
      for (std::size_t i = 0; i < M.dim(t); ++i)
        for (std::size_t j = 0; j < M.dim(t); ++j) block(i, j) = v[var(t, i, j)];
      phi.emplace(t, std::move(block));
    }
    out.push_back(std::move(phi));
  }
  return out;
}

/// Every endomorphism that is the identity in the bottom degree is invertible
/// through degree N - margin, where margin is the largest algebra generator
/// acting nontrivially. Inconclusive when that range is only the bottom
/// degree of a module that continues above it. Equivalently, the ideal of endomorphisms vanishing
/// in the bottom degree is nilpotent there.
inline AtomicReport is_atomic_module(const TruncatedAModule& M) {
  const SteenrodAlgebra A(M.prime());
  const unsigned p = M.prime().value();
  const auto b = M.bottom_nonzero();
  if (!b || M.dim(*b) != 1) return {Decision::no, M.top(), 0};

  int margin = 0;
  for (const auto& l : A.indecomposables_up_to(M.top() - M.bottom())) {
    for (int t = M.bottom(); t + l.degree(p) <= M.top(); ++t) {
      if (!M.act(l, t).is_zero()) margin = std::max(margin, l.degree(p));
    }
  }
  const int limit = M.top() - margin;
  bool above = false;
  for (int t = *b + 1; t <= M.top(); ++t) above = above || M.dim(t) > 0;
  if (limit <= *b && above) return {Decision::inconclusive, limit, 0};

  const auto ideal = endomorphisms(M, true);
  auto flatten = [&](const std::map<int, FpMatrix>& phi) {
    std::vector<std::uint32_t> v;
    for (int t = M.bottom(); t <= limit; ++t) {
      const auto& m = phi.at(t);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    }
    return v;
  };
  auto restrict_to = [&](const std::map<int, FpMatrix>& phi) {
    std::map<int, FpMatrix> r;
    for (int t = M.bottom(); t <= limit; ++t) r.emplace(t, phi.at(t));
    return r;
  };
  std::size_t width = 0;
  for (int t = M.bottom(); t <= limit; ++t) width += M.dim(t) * M.dim(t);

  // Basis of the restricted ideal, then powers I^k until they vanish or stall.
  std::vector<std::map<int, FpMatrix>> generators;
  {
    FpSpan span(p, width);
    for (const auto& phi : ideal) {
      auto r = restrict_to(phi);
      if (span.insert(flatten(r))) generators.push_back(std::move(r));
    }
  }
  std::vector<std::map<int, FpMatrix>> power = generators;
  std::size_t previous = power.size() + 1;
  while (!power.empty() && power.size() < previous) {
    previous = power.size();
    FpSpan span(p, width);
    std::vector<std::map<int, FpMatrix>> next;
    for (const auto& a : generators) {
      for (const auto& c : power) {
        std::map<int, FpMatrix> prod;
        for (int t = M.bottom(); t <= limit; ++t) prod.emplace(t, a.at(t) * c.at(t));
        if (span.insert(flatten(prod))) next.push_back(std::move(prod));
      }
    }
    power = std::move(next);
  }
  return {power.empty() ? Decision::yes : Decision::no, limit, ideal.size()};
}

}  // namespace nucleus
