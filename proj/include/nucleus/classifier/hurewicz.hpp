#pragma once

// Hurewicz indices of the standard suspension spectra: the image of
// pi_n -> H_n = Z_(p) is generated by index times a generator.

#include "nucleus/local.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace nucleus {

enum class HurewiczFamily { CP, HP, Mxi3, W };

inline std::string to_string(HurewiczFamily f) {
  switch (f) {
    case HurewiczFamily::CP: return "CP";
    case HurewiczFamily::HP: return "HP";
    case HurewiczFamily::Mxi3: return "Mxi3";
    case HurewiczFamily::W: return "W";
  }
  return "?";
}

inline HurewiczFamily parse_hurewicz_family(const std::string& s) {
  if (s == "CP") return HurewiczFamily::CP;
  if (s == "HP") return HurewiczFamily::HP;
  if (s == "Mxi3") return HurewiczFamily::Mxi3;
  if (s == "W") return HurewiczFamily::W;
  throw std::invalid_argument("unknown Hurewicz family '" + s + "' (expected CP, HP, Mxi3 or W)");
}

struct HurewiczIndex {
  int degree;
  BigInt index;
  int valuation;  // p-adic valuation of index
  bool zero_mod_p;
};

namespace detail {

inline BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline int valuation_of(BigInt n, unsigned p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace detail

/// a(n) = 1 for n even, 2 for n odd.
inline int a_function(int n) { return n % 2 == 0 ? 1 : 2; }

/// Cell n of the family:
///   CP:   degree 2n,   index n!                 (n >= 1)
///   HP:   degree 4n,   index (2n)! / a(n)       (n >= 1)
///   Mxi3: degree 4n+3, index a(n) (2n-1)!       (n >= 1)
///   W:    degree 2(p-1)n + 2r + 1, index m! with m = (p-1)n + r  (n >= 0, 1 <= r <= p-1)
inline HurewiczIndex hurewicz_index(HurewiczFamily family, int n, Prime p, int r = 0) {
  int degree = 0;
  BigInt index;
  switch (family) {
    case HurewiczFamily::CP:
      if (n < 1) throw std::invalid_argument("CP cells start at n = 1");
      degree = 2 * n;
      index = detail::factorial(n);
      break;
    case HurewiczFamily::HP:
      if (n < 1) throw std::invalid_argument("HP cells start at n = 1");
      degree = 4 * n;
      index = detail::factorial(2 * n) / a_function(n);
      break;
    case HurewiczFamily::Mxi3:
      if (n < 1) throw std::invalid_argument("Mxi3 indices start at n = 1");
      degree = 4 * n + 3;
      index = a_function(n) * detail::factorial(2 * n - 1);
      break;
    case HurewiczFamily::W: {
      const int q = static_cast<int>(p.value()) - 1;
      if (p.value() == 2) throw std::invalid_argument("W_r needs an odd prime");
      if (r < 1 || r > q) throw std::invalid_argument("W_r needs 1 <= r <= p-1");
      if (n < 0) throw std::invalid_argument("W_r cells start at n = 0");
      const int m = q * n + r;
      degree = 2 * m + 1;
      index = detail::factorial(m);
      break;
    }
  }
  const int v = detail::valuation_of(index, p.value());
  return {degree, index, v, v >= 1};
}

/// Degree of the bottom cell of the family.
inline int family_bottom(HurewiczFamily family, Prime p, int r = 0) {
  switch (family) {
    case HurewiczFamily::CP: return 2;
    case HurewiczFamily::HP: return 4;
    case HurewiczFamily::Mxi3: return 3;
    case HurewiczFamily::W:
      (void)p;
      return 2 * r + 1;
  }
  return 0;
}

/// The family index whose cell sits in degree d, if any (cells above the bottom only).
inline std::optional<int> family_cell(HurewiczFamily family, int d, Prime p, int r = 0) {
  switch (family) {
    case HurewiczFamily::CP:
      if (d >= 2 && d % 2 == 0) return d / 2;
      return std::nullopt;
    case HurewiczFamily::HP:
      if (d >= 4 && d % 4 == 0) return d / 4;
      return std::nullopt;
    case HurewiczFamily::Mxi3:
      if (d >= 7 && d % 4 == 3) return (d - 3) / 4;
      return std::nullopt;
    case HurewiczFamily::W: {
      const int step = 2 * (static_cast<int>(p.value()) - 1);
      const int base = 2 * r + 1;
      if (d >= base && (d - base) % step == 0) return (d - base) / step;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace nucleus
