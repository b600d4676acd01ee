#pragma once

// The verdict engine. Computable facts about a model are gathered once; the
// rules R0-R7 then propagate verdicts to a fixpoint. Each verdict keeps the
// shortest (then lexicographically least) chain of rule citations that
// produced it, which makes the fixpoint independent of rule order.

#include "nucleus/classifier/model.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace nucleus {

enum class Property {
  monogenic,
  noModPDetectableHomotopy,
  minimalAtomic,
  irreducible,
  atomic,
  nuclear,
  minimal,
  indecomposable,
};

inline constexpr std::array<Property, 8> all_properties = {
    Property::monogenic, Property::noModPDetectableHomotopy, Property::minimalAtomic, Property::irreducible,
    Property::atomic,    Property::nuclear,                  Property::minimal,       Property::indecomposable};

inline std::string to_string(Property p) {
  switch (p) {
    case Property::monogenic: return "monogenic";
    case Property::noModPDetectableHomotopy: return "noModPDetectableHomotopy";
    case Property::minimalAtomic: return "minimalAtomic";
    case Property::irreducible: return "irreducible";
    case Property::atomic: return "atomic";
    case Property::nuclear: return "nuclear";
    case Property::minimal: return "minimal";
    case Property::indecomposable: return "indecomposable";
  }
  return "?";
}

inline Property parse_property(const std::string& s) {
  for (auto p : all_properties)
    if (to_string(p) == s) return p;
  throw std::invalid_argument("unknown property '" + s + "'");
}

enum class Value { yes, no, unknown };

inline std::string to_string(Value v) {
  switch (v) {
    case Value::yes: return "yes";
    case Value::no: return "no";
    case Value::unknown: return "unknown";
  }
  return "?";
}

inline Value parse_value(const std::string& s) {
  if (s == "yes") return Value::yes;
  if (s == "no") return Value::no;
  if (s == "unknown") return Value::unknown;
  throw std::invalid_argument("unknown verdict value '" + s + "'");
}

struct DegreeRange {
  int lo;
  int hi;
  friend bool operator==(const DegreeRange&, const DegreeRange&) = default;
};

struct Verdict {
  Property property;
  Value value;
  DegreeRange range;
  std::vector<std::string> provenance;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Two rule chains reached opposite values for the same property.
class ModelInconsistency : public std::runtime_error {
 public:
  ModelInconsistency(Property p, const std::vector<std::string>& yes_chain, const std::vector<std::string>& no_chain)
      : std::runtime_error("inconsistent model: " + to_string(p) + " is yes by [" + join(yes_chain) + "] and no by [" +
                           join(no_chain) + "]"),
        property(p),
        yes_chain(yes_chain),
        no_chain(no_chain) {}

  Property property;
  std::vector<std::string> yes_chain;
  std::vector<std::string> no_chain;

  static std::string join(const std::vector<std::string>& chain) {
    std::string s;
    for (std::size_t i = 0; i < chain.size(); ++i) s += (i ? " > " : "") + chain[i];
    return s;
  }
};

enum class Rule { R0, R1, R2, R3, R4, R5, R6, R7 };

inline constexpr std::array<Rule, 8> all_rules = {Rule::R0, Rule::R1, Rule::R2, Rule::R3,
                                                  Rule::R4, Rule::R5, Rule::R6, Rule::R7};

inline std::string to_string(Rule r) { return "R" + std::to_string(static_cast<int>(r)); }

/// Everything the rules consult, computed once per classification.
struct ModelFacts {
  int n0;
  int N;
  std::size_t bottom_dim;  // dim H_{n0} (x) F_p

  struct Cohomology {
    bool monogenic;
    std::vector<int> generator_degrees;
    int reliable_through;
    Decision atomic;
    int atomic_through;
  };
  std::optional<Cohomology> cohomology;

  // Mod-p Hurewicz image above n0 through N.
  std::optional<int> first_nonzero;  // lowest degree with nonzero image
  bool all_zero = false;             // every degree in (n0, N] zero

  std::optional<NuclearTestResult> attaching;
  std::optional<NuclearTestResult> skeletal_hurewicz;
  int skeletal_top = 0;
  std::optional<bool> minimal;
  int chain_top = 0;
};

inline HurewiczFlag hurewicz_status(const SpectrumModel& m, int d) {
  if (m.hurewicz) {
    if (auto e = m.hurewicz->at(d, m.prime)) {
      const auto f = e->resolve(m.prime);
      if (f != HurewiczFlag::unknown) return f;
    }
  }
  if (m.homotopy_vanishes_above && d > *m.homotopy_vanishes_above) return HurewiczFlag::zero_mod_p;
  // The mod-p Hurewicz map factors through H_d(Y) (x) F_p.
  if (m.homology_known(d) && m.homology.at(d).empty()) return HurewiczFlag::zero_mod_p;
  return HurewiczFlag::unknown;
}

inline ModelFacts gather_facts(const SpectrumModel& m, int N) {
  m.validate();
  if (N < m.hurewicz_dim) throw std::invalid_argument("truncation bound below n0");
  ModelFacts f{m.hurewicz_dim, N, m.homology.at(m.hurewicz_dim).size()};
  if (m.cohomology) {
    const TruncatedAModule M = m.cohomology->realize(m.prime, N);
    if (M.bottom_nonzero() != m.hurewicz_dim) {
      throw ModelError("model '" + m.name + "': cohomology starts in a different degree than n0");
    }
    const auto gens = minimal_generators(M);
    const bool mono = is_monogenic(M);
    ModelFacts::Cohomology c{mono, gens.degrees(), std::max(m.hurewicz_dim, M.reliable_through()), Decision::yes,
                             M.top()};
    if (!mono) {
      const auto a = is_atomic_module(M);
      c.atomic = a.decision;
      c.atomic_through = a.checked_through;
    }
    f.cohomology = c;
  }
  bool all_zero = true;
  for (int d = m.hurewicz_dim + 1; d <= N; ++d) {
    const auto s = hurewicz_status(m, d);
    if (s == HurewiczFlag::nonzero_mod_p && !f.first_nonzero) f.first_nonzero = d;
    if (s != HurewiczFlag::zero_mod_p) all_zero = false;
  }
  f.all_zero = all_zero;
  int top = m.hurewicz_dim;
  for (const auto& s : m.skeletal.attaching) top = std::max(top, s.degree + 1);
  for (const auto& s : m.skeletal.hurewicz) top = std::max(top, s.degree);
  f.skeletal_top = std::min(top, N);
  if (!m.skeletal.attaching.empty()) f.attaching = nuclear_test(m.skeletal, m.hurewicz_dim);
  if (!m.skeletal.hurewicz.empty()) f.skeletal_hurewicz = skeletal_hurewicz_zero(m.skeletal, m.hurewicz_dim);
  if (m.chain) {
    f.minimal = is_minimal(*m.chain);
    f.chain_top = std::min(m.chain->top_degree(), N);
  }
  return f;
}

namespace detail {

class VerdictState {
 public:
  VerdictState(int n0, int N) {
    for (auto p : all_properties) v_.emplace(p, Verdict{p, Value::unknown, {n0, N}, {}});
  }

  const Verdict& operator[](Property p) const { return v_.at(p); }
  bool is(Property p, Value x) const { return v_.at(p).value == x; }

  /// Records a derivation; keeps the better chain, throws on a yes/no clash.
  void propose(Property p, Value x, DegreeRange r, std::vector<std::string> chain) {
    Verdict& cur = v_.at(p);
    if (cur.value == Value::unknown) {
      cur = {p, x, r, std::move(chain)};
      changed_ = true;
      return;
    }
    if (cur.value != x) {
      if (x == Value::yes) throw ModelInconsistency(p, chain, cur.provenance);
      throw ModelInconsistency(p, cur.provenance, chain);
    }
    if (better(chain, cur.provenance)) {
      cur.provenance = std::move(chain);
      cur.range = r;
      changed_ = true;
    }
  }

  /// Derives `p = x` from an established premise, extending its chain.
  void derive(Property from, Property p, Value x, const std::string& citation) {
    const Verdict& src = v_.at(from);
    auto chain = src.provenance;
    chain.push_back(citation);
    propose(p, x, src.range, std::move(chain));
  }

  bool take_changed() { return std::exchange(changed_, false); }

  std::vector<Verdict> result() const {
    std::vector<Verdict> out;
    for (auto p : all_properties) out.push_back(v_.at(p));
    return out;
  }

 private:
  static bool better(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }

  std::map<Property, Verdict> v_;
  bool changed_ = false;
};

inline std::string degree_list(const std::vector<int>& ds) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ds.size(); ++i) os << (i ? " " : "") << ds[i];
  return os.str();
}

inline void apply_rule(Rule rule, const SpectrumModel& m, const ModelFacts& f, VerdictState& s) {
  using P = Property;
  using V = Value;
  const int n0 = f.n0;
  const bool hurewicz_complex = f.bottom_dim == 1;
  switch (rule) {
    case Rule::R0: {
      // Atomic and "no detectable homotopy" both presuppose a Hurewicz complex.
      if (hurewicz_complex) return;
      const std::vector<std::string> c{"R0: H_n0 (x) F_p has dimension " + std::to_string(f.bottom_dim) +
                                       ", not a Hurewicz complex"};
      s.propose(P::atomic, V::no, {n0, n0}, c);
      s.propose(P::noModPDetectableHomotopy, V::no, {n0, n0}, c);
      s.propose(P::nuclear, V::no, {n0, n0}, c);
      return;
    }
    case Rule::R1: {
      if (!f.cohomology) return;
      const DegreeRange r{n0, std::min(f.N, f.cohomology->reliable_through)};
      if (f.cohomology->monogenic) {
        s.propose(P::monogenic, V::yes, r, {"R1: monogenic"});
        s.propose(P::noModPDetectableHomotopy, V::yes, r, {"R1: monogenic; cyclic cohomology"});
        s.propose(P::minimalAtomic, V::yes, r, {"R1: monogenic; cyclic cohomology"});
      } else {
        s.propose(P::monogenic, V::no, r,
                  {"R1: not monogenic; generators in degrees " + degree_list(f.cohomology->generator_degrees)});
      }
      return;
    }
    case Rule::R2: {
      if (!f.cohomology || !hurewicz_complex) return;
      const auto& g = f.cohomology->generator_degrees;
      if (g.size() == 1 && g.front() == n0) {
        s.propose(P::noModPDetectableHomotopy, V::yes, {n0, std::min(f.N, f.cohomology->reliable_through)},
                  {"R2: Ext^0 concentrated in degree n0"});
      }
      return;
    }
    case Rule::R3: {
      if (!hurewicz_complex) return;
      if (f.first_nonzero) {
        const int d = *f.first_nonzero;
        const std::vector<std::string> c{"R3: degree " + std::to_string(d) + " image nonzero mod " +
                                         std::to_string(m.prime.value())};
        s.propose(P::noModPDetectableHomotopy, V::no, {n0, d}, c);
        s.propose(P::minimalAtomic, V::no, {n0, d}, c);
      } else if (f.all_zero) {
        s.propose(P::noModPDetectableHomotopy, V::yes, {n0, f.N},
                  {"R3: mod " + std::to_string(m.prime.value()) + " Hurewicz image zero above n0"});
      }
      return;
    }
    case Rule::R4: {
      const std::string c = "R4: no detectable homotopy <=> minimal atomic <=> irreducible";
      const std::array<P, 3> eq{P::noModPDetectableHomotopy, P::minimalAtomic, P::irreducible};
      for (auto a : eq) {
        if (s.is(a, V::unknown)) continue;
        for (auto b : eq)
          if (a != b) s.derive(a, b, s[a].value, c);
      }
      return;
    }
    case Rule::R5: {
      if (s.is(P::minimalAtomic, V::yes)) s.derive(P::minimalAtomic, P::atomic, V::yes, "R5: minimal atomic implies atomic");
      if (s.is(P::nuclear, V::yes)) {
        s.derive(P::nuclear, P::atomic, V::yes, "R5: nuclear implies atomic");
        s.derive(P::nuclear, P::minimalAtomic, V::yes, "R5: nuclear implies minimal atomic");
      }
      if (s.is(P::atomic, V::yes)) s.derive(P::atomic, P::indecomposable, V::yes, "R5: atomic implies indecomposable");
      if (s.is(P::atomic, V::no)) s.derive(P::atomic, P::minimalAtomic, V::no, "R5: minimal atomic requires atomic");
      if (s.is(P::minimalAtomic, V::no)) s.derive(P::minimalAtomic, P::nuclear, V::no, "R5: nuclear implies minimal atomic");
      return;
    }
    case Rule::R6: {
      if (!hurewicz_complex) return;
      const DegreeRange sk{n0, f.skeletal_top};
      if (f.skeletal_hurewicz) {
        if (f.skeletal_hurewicz->nuclear) {
          s.propose(P::nuclear, V::yes, sk, {"R6: skeletal Hurewicz maps vanish above n0"});
        } else {
          s.propose(P::nuclear, V::no, sk,
                    {"R6: skeletal Hurewicz map nonzero in degree " + std::to_string(*f.skeletal_hurewicz->failing_degree)});
        }
      }
      if (f.attaching) {
        if (f.attaching->nuclear) {
          s.propose(P::nuclear, V::yes, sk, {"R6: attaching kernels lie in p pi_n(J_n)"});
        } else {
          s.propose(P::nuclear, V::no, sk,
                    {"R6: attaching kernel not in p pi_n(J_n) in degree " + std::to_string(*f.attaching->failing_degree)});
        }
      }
      if (f.minimal) {
        s.propose(P::minimal, *f.minimal ? V::yes : V::no, {n0, f.chain_top},
                  {*f.minimal ? "R6: cellular differential zero mod p" : "R6: cellular differential nonzero mod p"});
      }
      if (s.is(P::minimal, V::yes) && s.is(P::noModPDetectableHomotopy, V::yes)) {
        auto chain = s[P::minimal].provenance;
        const auto& other = s[P::noModPDetectableHomotopy].provenance;
        chain.insert(chain.end(), other.begin(), other.end());
        chain.push_back("R6: minimal with no detectable homotopy implies nuclear");
        const DegreeRange r{n0, std::min(s[P::minimal].range.hi, s[P::noModPDetectableHomotopy].range.hi)};
        s.propose(P::nuclear, V::yes, r, std::move(chain));
      }
      return;
    }
    case Rule::R7: {
      if (!f.cohomology || !hurewicz_complex) return;
      if (f.cohomology->atomic == Decision::yes) {
        s.propose(P::atomic, V::yes, {n0, std::min(f.N, f.cohomology->atomic_through)},
                  {"R7: cohomology is an atomic A-module"});
      }
      return;
    }
  }
}

}  // namespace detail

inline std::vector<Rule> default_rule_order() { return {all_rules.begin(), all_rules.end()}; }

/// All eight verdicts in a fixed property order.
inline std::vector<Verdict> classify(const SpectrumModel& m, int N, const std::vector<Rule>& order = default_rule_order()) {
  const ModelFacts f = gather_facts(m, N);
  detail::VerdictState s(f.n0, N);
  do {
    for (Rule r : order) detail::apply_rule(r, m, f, s);
  } while (s.take_changed());
  return s.result();
}

inline const Verdict& find_verdict(const std::vector<Verdict>& vs, Property p) {
  for (const auto& v : vs)
    if (v.property == p) return v;
  throw std::out_of_range("no verdict for " + to_string(p));
}
/// By value when the verdict list is a temporary.
inline Verdict find_verdict(std::vector<Verdict>&& vs, Property p) { return find_verdict(vs, p); }

}  // namespace nucleus
