#pragma once

// 2-local stable stems through degree 8, their action on pi_*(ko), Toda
// bracket bookkeeping (definedness and indeterminacy, never values), and the
// check that the bracket families reach every additive generator of pi_*(ko).

#include "nucleus/ko/ring.hpp"

#include <map>
#include <variant>

namespace nucleus {

struct StemGenerator {
  std::string name;
  int degree;
  int order;           // 0 for infinite cyclic
  KoElement ko_image;  // under the unit S -> ko
  bool from_standard_tables;
};

/// pi_n(S)_(2), 0 <= n <= 8: Z, Z/2, Z/2, Z/8, 0, 0, Z/2, Z/16, Z/2 + Z/2.
/// pi_6 and pi_8 generator names come from the standard tables.
inline const std::vector<StemGenerator>& stem_table() {
  static const std::vector<StemGenerator> table = {
      {"1", 0, 0, KoElement::unit(), false},
      {"eta", 1, 2, KoElement::eta(), false},
      {"eta2", 2, 2, KoElement::eta2(), false},
      {"nu", 3, 8, KoElement::zero(3), false},
      {"nu2", 6, 2, KoElement::zero(6), true},
      {"sigma", 7, 16, KoElement::zero(7), false},
      {"eta*sigma", 8, 2, KoElement::zero(8), true},
      {"epsilon", 8, 2, KoElement::zero(8), true},
  };
  return table;
}

inline constexpr int stem_table_top = 8;

inline std::vector<StemGenerator> stem_generators(int n) {
  if (n < 0 || n > stem_table_top) throw std::out_of_range("the stem table covers degrees 0 through 8");
  std::vector<StemGenerator> out;
  for (const auto& g : stem_table())
    if (g.degree == n) out.push_back(g);
  return out;
}

/// multiple times a named generator; also the degree-only symbols mu_{8k+1}, mu_{8k+2}.
struct StemElement {
  std::string name;  // "" for zero
  int degree;
  BigInt multiple;

  bool is_zero() const { return name.empty() || multiple == 0; }

  std::string to_string() const {
    if (is_zero()) return "0";
    if (name == "1") return multiple.str();
    return multiple == 1 ? name : multiple.str() + " " + name;
  }
};

namespace detail {

inline std::optional<int> mu_degree(const std::string& name) {
  if (name.size() < 3 || name.compare(0, 2, "mu") != 0) return std::nullopt;
  try {
    std::size_t used = 0;
    const int d = std::stoi(name.substr(2), &used);
    if (used == name.size() - 2 && d > 0 && (d % 8 == 1 || d % 8 == 2)) return d;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

inline const StemGenerator* find_generator(const std::string& name) {
  for (const auto& g : stem_table())
    if (g.name == name) return &g;
  return nullptr;
}

}  // namespace detail

inline StemElement stem_zero(int degree) { return {"", degree, 0}; }

inline StemElement make_stem(const std::string& name, BigInt multiple = 1) {
  if (auto d = detail::mu_degree(name)) return {name, *d, multiple % 2 == 0 ? BigInt(0) : BigInt(1)};
  const auto* g = detail::find_generator(name);
  if (!g) throw std::invalid_argument("unknown stem element '" + name + "'");
  if (g->order > 0) {
    multiple %= g->order;
    if (multiple < 0) multiple += g->order;
  }
  return multiple == 0 ? stem_zero(g->degree) : StemElement{name, g->degree, multiple};
}

inline StemElement stem_integer(const BigInt& n) { return make_stem("1", n); }

/// "8", "nu", "2 nu", "sigma", "mu9".
inline StemElement parse_stem(const std::string& text) {
  const auto space = text.find(' ');
  if (space == std::string::npos) {
    if (!text.empty() && text.find_first_not_of("-0123456789") == std::string::npos) return stem_integer(BigInt(text));
    return make_stem(text);
  }
  const std::string k = text.substr(0, space);
  if (k.empty() || k.find_first_not_of("-0123456789") != std::string::npos) {
    throw std::invalid_argument("bad stem element '" + text + "'");
  }
  return make_stem(text.substr(space + 1), BigInt(k));
}

/// Image under the unit map, in pi_*(ko).
inline KoElement stem_image(const StemElement& a) {
  if (a.is_zero()) return KoElement::zero(a.degree);
  if (auto d = detail::mu_degree(a.name)) {
    return KoElement(*d, 1);  // eta beta^k or eta^2 beta^k
  }
  const auto* g = detail::find_generator(a.name);
  return g->ko_image.scaled(LocalScalar(Prime(2), a.multiple));
}

/// Product in pi_*(S) when the table determines it.
inline std::optional<StemElement> stem_product(const StemElement& a, const StemElement& b) {
  const int n = a.degree + b.degree;
  if (a.is_zero() || b.is_zero()) return stem_zero(n);
  if (a.name == "1") return make_stem(b.name, a.multiple * b.multiple);
  if (b.name == "1") return make_stem(a.name, a.multiple * b.multiple);
  if (n == 4 || n == 5) return stem_zero(n);
  const BigInt m = a.multiple * b.multiple;
  auto is = [&](const char* x, const char* y) { return (a.name == x && b.name == y) || (a.name == y && b.name == x); };
  if (is("eta", "eta")) return make_stem("eta2", m);
  if (is("eta", "eta2")) return make_stem("nu", 4 * m);
  if (is("nu", "nu")) return make_stem("nu2", m);
  if (is("eta", "sigma")) return make_stem("eta*sigma", m);
  return std::nullopt;
}

/// Even-degree classes of pi_*(X) annihilated by nu and sigma, by hypothesis.
struct FormalSlot {
  int degree;
};

using BracketSlot = std::variant<KoElement, FormalSlot>;

inline int slot_degree(const BracketSlot& c) {
  return std::visit([](const auto& x) -> int {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, KoElement>) return x.degree();
    else return x.degree;
  }, c);
}

struct BracketCheck {
  bool defined;
  std::string reason;  // the failing product, or "ab = 0, bc = 0"
};

inline BracketCheck bracket_defined(const StemElement& a, const StemElement& b, const BracketSlot& c) {
  const auto ab = stem_product(a, b);
  if (!ab) return {false, "ab = " + a.to_string() + " * " + b.to_string() + " is not determined by the stem table"};
  if (!ab->is_zero()) return {false, "ab = " + ab->to_string()};
  if (const auto* x = std::get_if<KoElement>(&c)) {
    const KoElement bc = ko_mul(stem_image(b), *x);
    if (!bc.is_zero()) return {false, "bc = " + bc.to_string()};
  } else {
    const auto& slot = std::get<FormalSlot>(c);
    const bool annihilates = !b.is_zero() && (b.name == "nu" || b.name == "sigma");
    if (!b.is_zero() && !(annihilates && slot.degree % 2 == 0)) {
      return {false, "bc = " + b.to_string() + " * x is not covered by the hypothesis"};
    }
  }
  return {true, "ab = 0, bc = 0"};
}

/// A subgroup 2^v pi_n(ko) (v absent: the zero subgroup).
struct KoSubgroup {
  int degree;
  std::optional<int> valuation;

  bool contained_in_twice() const {
    if (!valuation) return true;
    return ko_group(degree).kind == KoGroup::Kind::integers && *valuation >= 1;
  }

  std::string to_string() const {
    if (!valuation) return "0";
    const KoGroup g = ko_group(degree);
    if (g.kind == KoGroup::Kind::two_torsion) return "pi_" + std::to_string(degree) + "(ko)";
    if (*valuation == 0) return "pi_" + std::to_string(degree) + "(ko)";
    return std::to_string(1L << *valuation) + " pi_" + std::to_string(degree) + "(ko)";
  }

  static KoSubgroup generated_by(const KoElement& x) {
    if (x.is_zero()) return {x.degree(), std::nullopt};
    return {x.degree(), ko_torsion(x.basis()) ? 0 : x.coefficient().valuation()};
  }

  friend KoSubgroup operator+(const KoSubgroup& a, const KoSubgroup& b) {
    if (!a.valuation) return b;
    if (!b.valuation) return a;
    return {a.degree, std::min(*a.valuation, *b.valuation)};
  }
};

struct BracketRecord {
  StemElement a;
  StemElement b;
  KoElement c;
  int degree;
  KoSubgroup left;   // a pi_{|b|+|c|+1}(ko)
  KoSubgroup right;  // pi_{|a|+|b|+1}(S) c
  KoSubgroup indeterminacy;
};

/// a pi_{|b|+|c|+1}(ko) + pi_{|a|+|b|+1}(S) c, for a defined bracket.
inline BracketRecord bracket_indeterminacy(const StemElement& a, const StemElement& b, const KoElement& c) {
  const auto check = bracket_defined(a, b, c);
  if (!check.defined) throw std::invalid_argument("bracket is not defined: " + check.reason);
  const int d = a.degree + b.degree + c.degree() + 1;
  const int m = b.degree + c.degree() + 1;
  KoSubgroup left{d, std::nullopt};
  if (ko_basis(m) != KoBasis::none) left = KoSubgroup::generated_by(ko_mul(stem_image(a), KoElement(m, 1)));
  KoSubgroup right{d, std::nullopt};
  if (!c.is_zero()) {
    for (const auto& g : stem_generators(a.degree + b.degree + 1)) {
      right = right + KoSubgroup::generated_by(ko_mul(g.ko_image, c));
    }
  }
  return {a, b, c, d, left, right, left + right};
}

/// One of the families reaching the additive generators of pi_*(ko).
struct CoverageEntry {
  int degree;
  std::string family;     // "mu_9 b0", "a_2", "b_1"
  std::string bracket;    // "<16, sigma, a_1>" or ""
  KoElement image;        // the generator it hits
  bool bracket_ok = true; // defined, indeterminacy in 2 pi(ko)
};

struct CoverageReport {
  int max_degree;
  std::vector<CoverageEntry> entries;
  std::vector<int> gaps;          // nonzero degrees without a family
  std::vector<std::string> problems;

  bool complete() const { return gaps.empty() && problems.empty(); }
};

inline CoverageReport generator_coverage_check(int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("coverage needs maxDegree >= 1");
  CoverageReport r{max_degree, {}, {}, {}};
  std::map<int, const CoverageEntry*> by_degree;
  const StemElement eight = stem_integer(8), sixteen = stem_integer(16);
  const StemElement nu = make_stem("nu"), sigma = make_stem("sigma");

  // mu_{8k+1} b0, mu_{8k+2} b0.
  for (int k = 0; 8 * k + 1 <= max_degree; ++k) {
    for (int e : {1, 2}) {
      const int d = 8 * k + e;
      if (d > max_degree) continue;
      const StemElement mu = make_stem("mu" + std::to_string(d));
      r.entries.push_back({d, "mu_" + std::to_string(d) + " b0", "", ko_mul(stem_image(mu), KoElement::unit())});
    }
  }
  // a_1 in <8, nu, b0>, a_{k+1} in <16, sigma, a_k>; b_k in <16, sigma, b_{k-1}>.
  auto add_family = [&](const std::string& prefix, int first_index, StemElement a, StemElement b, KoElement seed,
                        int seed_degree) {
    int deg = seed_degree;
    KoElement c = seed;
    std::string previous = prefix == "a" ? "b0" : "b_0";
    for (int i = first_index;; ++i) {
      const BracketRecord rec = bracket_indeterminacy(a, b, c);
      deg = a.degree + b.degree + deg + 1;
      if (deg != rec.degree) r.problems.push_back("degree bookkeeping failed at " + prefix + "_" + std::to_string(i));
      if (deg > max_degree) break;
      const std::string name = prefix + "_" + std::to_string(i);
      const KoElement image(deg, 1);
      CoverageEntry e{deg, name, "<" + a.to_string() + ", " + b.to_string() + ", " + previous + ">", image,
                      rec.indeterminacy.contained_in_twice()};
      if (!e.bracket_ok) r.problems.push_back(name + ": indeterminacy " + rec.indeterminacy.to_string() + " not in 2 pi(ko)");
      r.entries.push_back(e);
      previous = name;
      c = image;
      a = sixteen;
      b = sigma;
    }
  };
  add_family("a", 1, eight, nu, KoElement::unit(), 0);
  add_family("b", 1, sixteen, sigma, KoElement::unit(), 0);

  for (const auto& e : r.entries) by_degree[e.degree] = &e;
  for (int n = 1; n <= max_degree; ++n) {
    const KoGroup g = ko_group(n);
    auto it = by_degree.find(n);
    if (g.kind == KoGroup::Kind::zero) {
      if (it != by_degree.end()) r.problems.push_back(it->second->family + " lands in the zero group pi_" + std::to_string(n));
      continue;
    }
    if (it == by_degree.end()) {
      r.gaps.push_back(n);
      continue;
    }
    if (it->second->image.to_string() != g.generator) {
      r.problems.push_back(it->second->family + " hits " + it->second->image.to_string() + ", not the generator " +
                           g.generator);
    }
  }
  return r;
}

}  // namespace nucleus
