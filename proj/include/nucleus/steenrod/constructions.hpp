#pragma once

// Standard modules: cohomology of projective spaces and of their Thom
// spectra, and quotients A//B by finite subalgebras.

#include "nucleus/steenrod/module.hpp"

#include <string>

namespace nucleus {

enum class ProjectiveKind { RP, CP, HP };

/// |x| = 1, 2, 4.
inline int generator_degree(ProjectiveKind k) {
  switch (k) {
    case ProjectiveKind::RP: return 1;
    case ProjectiveKind::CP: return 2;
    case ProjectiveKind::HP: return 4;
  }
  return 0;
}

inline std::string to_string(ProjectiveKind k) {
  switch (k) {
    case ProjectiveKind::RP: return "RP";
    case ProjectiveKind::CP: return "CP";
    case ProjectiveKind::HP: return "HP";
  }
  return "?";
}

inline ProjectiveKind parse_projective_kind(const std::string& s) {
  if (s == "RP") return ProjectiveKind::RP;
  if (s == "CP") return ProjectiveKind::CP;
  if (s == "HP") return ProjectiveKind::HP;
  throw std::invalid_argument("unknown projective space '" + s + "' (expected RP, CP or HP)");
}

namespace detail {

inline std::string power_label(int n, const std::string& suffix) {
  std::string s = n == 0 ? "" : (n == 1 ? "x" : "x^" + std::to_string(n));
  if (suffix.empty()) return s;
  return s.empty() ? suffix : s + " " + suffix;
}

/// Basis x^n (times an optional class) in degree d n + shift for n >= first,
/// with Sq^{d i} x^n = coefficient(n, i) x^{n+i} and other squares zero.
template <class Coefficient>
TruncatedAModule power_module(int d, int shift, int first, int N, const std::string& suffix, Coefficient coefficient) {
  const Prime two(2);
  const int bottom = d * first + shift;
  if (N < bottom) throw std::invalid_argument("truncation bound below the bottom class");
  TruncatedAModule M(two, bottom, N, 0);
  for (int n = first; d * n + shift <= N; ++n) M.set_labels(d * n + shift, {power_label(n, suffix)});
  for (int n = first; d * n + shift <= N; ++n) {
    for (int i = 1; d * (n + i) + shift <= N; ++i) {
      if (coefficient(n, i) == 0) continue;
      FpMatrix m(2, 1, 1);
      m(0, 0) = 1;
      M.set_action(Letter::sq(d * i), d * n + shift, std::move(m));
    }
  }
  return M;
}

}  // namespace detail

/// H^*(P; F_2) in positive degrees: x^n for n >= 1, Sq^{d i} x^n = C(n, i) x^{n+i}.
inline TruncatedAModule projective_module(ProjectiveKind kind, int N) {
  const int d = generator_degree(kind);
  return detail::power_module(d, 0, 1, N, "", [](int n, int i) { return binomial_mod(n, i, 2); });
}

/// Cohomology of the Thom spectrum over P of minus the canonical bundle:
/// x^n mu in degree d n - d, Sq^{d i}(x^n mu) = C(n - 1, i) x^{n+i} mu, with
/// C(-1, i) = 1 mod 2, so Sq^{d n} mu = x^n mu.
inline TruncatedAModule thom_module(ProjectiveKind kind, int N) {
  const int d = generator_degree(kind);
  return detail::power_module(d, -d, 0, N, "mu", [](int n, int i) { return n == 0 ? 1u : binomial_mod(n - 1, i, 2); });
}

enum class SubalgebraFamily { A, E };

/// A//A(n) (p = 2) or A//E(n): the quotient of A by the left ideal generated
/// by Sq^1, Sq^2, ..., Sq^{2^n}, respectively by Q_0, ..., Q_n.
inline FPModuleSpec subalgebra_quotient_spec(Prime p, SubalgebraFamily family, int n) {
  if (n < 0) throw std::invalid_argument("subalgebra index must be >= 0");
  if (family == SubalgebraFamily::A && p.value() != 2) throw std::invalid_argument("A(n) quotients need p = 2");
  const SteenrodAlgebra A(p);
  FPModuleSpec spec{p, {{"1", 0}}, {}};
  for (int k = 0; k <= n; ++k) {
    const SteenrodElement r = family == SubalgebraFamily::A ? A.monomial({Letter::sq(1 << k)}) : A.milnor_primitive(k);
    spec.relations.push_back({{r, 0}});
  }
  return spec;
}

inline TruncatedAModule quotient_by_subalgebra(Prime p, SubalgebraFamily family, int n, int N) {
  return realize(subalgebra_quotient_spec(p, family, n), N);
}

/// "A(1)" or "E(2)".
inline std::pair<SubalgebraFamily, int> parse_subalgebra(const std::string& s) {
  if (s.size() >= 4 && (s[0] == 'A' || s[0] == 'E') && s[1] == '(' && s.back() == ')') {
    try {
      std::size_t pos = 0;
      const int n = std::stoi(s.substr(2, s.size() - 3), &pos);
      if (pos == s.size() - 3 && n >= 0) return {s[0] == 'A' ? SubalgebraFamily::A : SubalgebraFamily::E, n};
    } catch (const std::exception&) {
    }
  }
  throw std::invalid_argument("bad subalgebra '" + s + "' (expected A(n) or E(n))");
}

}  // namespace nucleus
