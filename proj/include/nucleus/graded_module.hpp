#pragma once

#include "nucleus/smith.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace nucleus {

/// Finite-type graded Z_(p)-module given by its cyclic decomposition in each
/// degree. Degrees listed in `unreliable` were not computed (truncation).
struct GradedModule {
  explicit GradedModule(Prime p) : prime(p) {}

  Prime prime;
  std::map<int, std::vector<CyclicSummand>> groups;
  std::set<int> unreliable;

  void add(int degree, CyclicSummand s) {
    auto& g = groups[degree];
    g.insert(std::upper_bound(g.begin(), g.end(), s), s);
  }

  const std::vector<CyclicSummand>& at(int degree) const {
    static const std::vector<CyclicSummand> empty;
    auto it = groups.find(degree);
    return it == groups.end() ? empty : it->second;
  }

  bool is_zero() const { return bottom_degree() == std::nullopt; }

  /// Lowest degree carrying a nonzero summand.
  std::optional<int> bottom_degree() const {
    for (const auto& [d, g] : groups) {
      if (!g.empty()) return d;
    }
    return std::nullopt;
  }

  std::optional<int> top_degree() const {
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
      if (!it->second.empty()) return it->first;
    }
    return std::nullopt;
  }

  /// dim H_n(-; F_p) by the universal coefficient theorem.
  std::size_t mod_p_dimension(int degree) const {
    std::size_t d = at(degree).size();
    for (const auto& s : at(degree - 1)) {
      if (!s.is_free()) ++d;
    }
    return d;
  }

  GradedModule shifted(int k) const {
    GradedModule out(prime);
    for (const auto& [d, g] : groups) out.groups[d + k] = g;
    for (int d : unreliable) out.unreliable.insert(d + k);
    return out;
  }

  /// Degrees whose summand lists are empty are ignored.
  friend bool operator==(const GradedModule& a, const GradedModule& b) {
    if (a.prime != b.prime || a.unreliable != b.unreliable) return false;
    auto strip = [](const GradedModule& m) {
      std::map<int, std::vector<CyclicSummand>> g;
      for (const auto& [d, s] : m.groups) {
        if (!s.empty()) g[d] = s;
      }
      return g;
    };
    return strip(a) == strip(b);
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, g] : groups) {
      if (g.empty()) continue;
      os << (first ? "" : "; ") << "H" << d << " = ";
      first = false;
      for (std::size_t i = 0; i < g.size(); ++i) os << (i ? " + " : "") << g[i].to_string(prime);
    }
    if (first) os << "0";
    if (!unreliable.empty()) {
      os << " (unreliable:";
      for (int d : unreliable) os << " " << d;
      os << ")";
    }
    return os.str();
  }
};

}  // namespace nucleus
