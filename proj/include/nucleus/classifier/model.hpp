#pragma once

// Spectrum models: what is known about a p-local spectrum Y, as data.

#include "nucleus/chain_complex.hpp"
#include "nucleus/classifier/hurewicz.hpp"
#include "nucleus/classifier/skeletal.hpp"
#include "nucleus/steenrod/constructions.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace nucleus {

/// A model violates one of its own invariants.
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Where H^*(Y; F_p) comes from; realized on demand at a truncation bound.
struct CohomologySource {
  enum class Kind {
    ground_field,      // F_p in the bottom degree (A//A)
    subalgebra,        // A//A(n) or A//E(n)
    exterior_all,      // A//E(infinity): every Milnor primitive killed
    projective,        // H^*(RP/CP/HP, positive degrees)
    thom,              // Thom spectrum of minus the canonical bundle
    presentation,      // explicit generators and relations
  };
  Kind kind = Kind::ground_field;
  SubalgebraFamily family = SubalgebraFamily::A;
  int index = 0;
  ProjectiveKind space = ProjectiveKind::RP;
  std::optional<FPModuleSpec> spec;
  int shift = 0;

  std::string describe() const {
    std::string s;
    switch (kind) {
      case Kind::ground_field: s = "A//A"; break;
      case Kind::subalgebra:
        s = std::string("A//") + (family == SubalgebraFamily::A ? "A(" : "E(") + std::to_string(index) + ")";
        break;
      case Kind::exterior_all: s = "A//E(inf)"; break;
      case Kind::projective: s = "H^*(" + to_string(space) + "^inf)"; break;
      case Kind::thom: s = "H^*(" + to_string(space) + "^inf_-1)"; break;
      case Kind::presentation: s = "presented module"; break;
    }
    if (shift != 0) s = "Sigma^" + std::to_string(shift) + " " + s;
    return s;
  }

  /// Needs p = 2 except for ground_field, E quotients and presentations.
  TruncatedAModule realize(Prime p, int N) const {
    const int n = N - shift;
    auto unshifted = [&]() -> TruncatedAModule {
      switch (kind) {
        case Kind::ground_field: {
          if (n < 0) throw std::invalid_argument("truncation bound below the bottom class");
          TruncatedAModule M(p, 0, n, 0);
          M.set_labels(0, {"1"});
          return M;
        }
        case Kind::subalgebra: return quotient_by_subalgebra(p, family, index, n);
        case Kind::exterior_all: {
          // Q_k has degree 2 p^k - 1; keep every k with Q_k inside the bound.
          int k = 0;
          for (long q = p.value(); 2 * q - 1 <= n; q *= p.value()) ++k;
          return quotient_by_subalgebra(p, SubalgebraFamily::E, k, n);
        }
        case Kind::projective:
          if (p.value() != 2) throw std::invalid_argument("projective cohomology is implemented at p = 2");
          return projective_module(space, n);
        case Kind::thom:
          if (p.value() != 2) throw std::invalid_argument("Thom cohomology is implemented at p = 2");
          return thom_module(space, n);
        case Kind::presentation: return nucleus::realize(*spec, n);
      }
      throw std::logic_error("unknown cohomology kind");
    };
    TruncatedAModule M = unshifted();
    return shift == 0 ? M : M.shifted(shift);
  }
};

enum class HurewiczFlag { zero_mod_p, nonzero_mod_p, unknown };

inline std::string to_string(HurewiczFlag f) {
  switch (f) {
    case HurewiczFlag::zero_mod_p: return "zero-mod-p";
    case HurewiczFlag::nonzero_mod_p: return "nonzero-mod-p";
    case HurewiczFlag::unknown: return "unknown";
  }
  return "?";
}

/// Either the index of the image in a rank-one free H_n, or a bare flag.
struct HurewiczEntry {
  std::optional<BigInt> index;
  HurewiczFlag flag = HurewiczFlag::unknown;

  static HurewiczEntry from_index(const BigInt& i) { return {i, HurewiczFlag::unknown}; }
  static HurewiczEntry from_flag(HurewiczFlag f) { return {std::nullopt, f}; }

  HurewiczFlag resolve(Prime p) const {
    if (!index) return flag;
    return *index % p.value() == 0 ? HurewiczFlag::zero_mod_p : HurewiczFlag::nonzero_mod_p;
  }
};

struct HurewiczImages {
  std::optional<HurewiczFamily> family;
  int r = 0;             // W_r parameter
  int family_shift = 0;  // suspension applied to the family's cells
  std::map<int, HurewiczEntry> entries;

  /// Explicit entry or family cell at degree d (cells above the family's bottom).
  std::optional<HurewiczEntry> at(int d, Prime p) const {
    auto it = entries.find(d);
    if (it != entries.end()) return it->second;
    if (family) {
      const int bottom = family_bottom(*family, p, r) + family_shift;
      if (d > bottom) {
        if (auto k = family_cell(*family, d - family_shift, p, r)) {
          return HurewiczEntry::from_index(hurewicz_index(*family, *k, p, r).index);
        }
      }
    }
    return std::nullopt;
  }
};

struct SpectrumModel {
  std::string name;
  Prime prime{2};
  int hurewicz_dim = 0;
  GradedModule homology{Prime(2)};
  int homology_known_through = 0;  // degrees above are unknown unless bounded
  bool homology_bounded = false;   // H vanishes above homology_known_through
  std::optional<CohomologySource> cohomology;
  std::optional<HurewiczImages> hurewicz;
  std::optional<int> homotopy_vanishes_above;
  SkeletalHomotopyData skeletal;
  std::optional<CellComplex> chain;
  std::string note;

  bool homology_known(int d) const {
    if (homology.unreliable.count(d)) return false;
    return d <= homology_known_through || homology_bounded;
  }

  /// H_{n0} (x) F_p is one-dimensional.
  bool is_hurewicz_complex() const { return homology.at(hurewicz_dim).size() == 1; }

  void validate() const {
    const auto fail = [&](const std::string& why) { throw ModelError("model '" + name + "': " + why); };
    if (homology.prime != prime) fail("homology is over a different prime");
    for (const auto& [d, g] : homology.groups) {
      if (d < hurewicz_dim && !g.empty()) fail("homology is nonzero in degree " + std::to_string(d) + " below n0");
    }
    if (homology.at(hurewicz_dim).empty()) fail("homology vanishes in degree n0 = " + std::to_string(hurewicz_dim));
    if (homology_known_through < hurewicz_dim) fail("homology must be known at least through n0");
    if (hurewicz) {
      for (const auto& [d, e] : hurewicz->entries) {
        if (!homology_known(d) || homology.at(d).empty()) {
          fail("Hurewicz data in degree " + std::to_string(d) + " where the homology is zero or unknown");
        }
        if (e.index) {
          const auto& g = homology.at(d);
          if (g.size() != 1 || !g.front().is_free()) {
            fail("Hurewicz index in degree " + std::to_string(d) + " but H_" + std::to_string(d) +
                 " is not free of rank one");
          }
          if (*e.index <= 0) fail("Hurewicz index in degree " + std::to_string(d) + " must be positive");
        }
      }
      if (hurewicz->family == HurewiczFamily::W &&
          (prime.value() == 2 || hurewicz->r < 1 || hurewicz->r > static_cast<int>(prime.value()) - 1)) {
        fail("W_r needs an odd prime and 1 <= r <= p-1");
      }
    }
    if (cohomology && cohomology->spec && cohomology->spec->prime != prime) fail("cohomology is over a different prime");
    for (const auto& s : skeletal.attaching) {
      if (s.attaching.prime() != prime) fail("skeletal data over a different prime");
      s.skeleton_homotopy.validate(prime);
      if (s.attaching.rows() != s.skeleton_homotopy.generators) {
        fail("attaching matrix in degree " + std::to_string(s.degree) + " has shape " + s.attaching.shape());
      }
    }
    for (const auto& s : skeletal.hurewicz) {
      if (s.h.prime() != prime.value()) fail("skeletal Hurewicz data over a different prime");
      s.skeleton_homotopy.validate(prime);
      if (s.h.cols() != s.skeleton_homotopy.generators) {
        fail("Hurewicz matrix in degree " + std::to_string(s.degree) + " has the wrong width");
      }
    }
    if (chain) {
      if (chain->prime() != prime) fail("chain complex over a different prime");
      if (chain->hurewicz_dim() != hurewicz_dim) fail("chain complex starts in a different degree");
    }
  }
};

/// Sigma^k Y: every degree moves up by k.
inline SpectrumModel suspend(const SpectrumModel& m, int k) {
  SpectrumModel out = m;
  out.name = k == 0 ? m.name : "Sigma^" + std::to_string(k) + " " + m.name;
  out.hurewicz_dim += k;
  out.homology = m.homology.shifted(k);
  out.homology_known_through += k;
  if (out.cohomology) out.cohomology->shift += k;
  if (out.hurewicz) {
    out.hurewicz->family_shift += k;
    out.hurewicz->entries.clear();
    for (const auto& [d, e] : m.hurewicz->entries) out.hurewicz->entries.emplace(d + k, e);
  }
  if (out.homotopy_vanishes_above) *out.homotopy_vanishes_above += k;
  out.skeletal = m.skeletal.shifted(k);
  if (m.chain) out.chain = nucleus::suspend(*m.chain, k);
  return out;
}

/// Y[n]: homotopy above n killed. Homology, and Hurewicz data, survive through n;
/// everything that depends on cells or on the whole cohomology is dropped.
inline SpectrumModel postnikov(const SpectrumModel& m, int n) {
  if (n < m.hurewicz_dim) throw std::invalid_argument("Postnikov section below n0");
  SpectrumModel out;
  out.name = m.name + "[" + std::to_string(n) + "]";
  out.prime = m.prime;
  out.hurewicz_dim = m.hurewicz_dim;
  out.homology = GradedModule(m.prime);
  for (const auto& [d, g] : m.homology.groups) {
    if (d <= n) out.homology.groups[d] = g;
  }
  for (int d : m.homology.unreliable) {
    if (d <= n) out.homology.unreliable.insert(d);
  }
  out.homology_known_through = m.homology_bounded ? n : std::min(n, m.homology_known_through);
  out.homology_bounded = false;
  if (m.hurewicz) {
    HurewiczImages h;
    for (int d = m.hurewicz_dim; d <= n; ++d) {
      if (auto e = m.hurewicz->at(d, m.prime); e && out.homology_known(d) && !out.homology.at(d).empty()) {
        h.entries.emplace(d, *e);
      }
    }
    out.hurewicz = std::move(h);
  }
  out.homotopy_vanishes_above = m.homotopy_vanishes_above ? std::min(n, *m.homotopy_vanishes_above) : n;
  out.note = "Postnikov section of " + m.name;
  return out;
}

enum class TransformKind { suspend, postnikov };

inline SpectrumModel model_transform(const SpectrumModel& m, TransformKind op, int k) {
  return op == TransformKind::suspend ? suspend(m, k) : postnikov(m, k);
}

}  // namespace nucleus
