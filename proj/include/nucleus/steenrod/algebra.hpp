#pragma once

// The mod-p Steenrod algebra in the admissible basis. Words are rewritten by
// Adem relations, leftmost inadmissible spot first, with memoized results.

#include "nucleus/local.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nucleus {

/// Sq^i (p = 2), or the Bockstein b / P^i at odd primes.
struct Letter {
  enum class Kind : std::uint8_t { sq, bockstein, power };
  Kind kind;
  int exponent;

  static Letter sq(int i) { return {Kind::sq, i}; }
  static Letter bockstein() { return {Kind::bockstein, 1}; }
  static Letter power(int i) { return {Kind::power, i}; }

  int degree(unsigned p) const {
    switch (kind) {
      case Kind::sq: return exponent;
      case Kind::bockstein: return 1;
      case Kind::power: return 2 * exponent * static_cast<int>(p - 1);
    }
    return 0;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::sq: return "Sq" + std::to_string(exponent);
      case Kind::bockstein: return "b";
      case Kind::power: return "P" + std::to_string(exponent);
    }
    return "?";
  }

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Monomial = std::vector<Letter>;

/// F_p-combination of monomials; stored coefficients are nonzero.
struct SteenrodElement {
  std::map<Monomial, std::uint32_t> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const SteenrodElement&, const SteenrodElement&) = default;
};

/// C(n, k) mod p by Lucas' theorem; zero when k < 0, n < 0 or k > n.
inline std::uint32_t binomial_mod(long long n, long long k, unsigned p) {
  if (n < 0 || k < 0 || k > n) return 0;
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const long long ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    std::uint64_t c = 1;
    for (long long i = 0; i < ki; ++i) {
      c = c * static_cast<std::uint64_t>(ni - i) % p;
    }
    std::uint64_t den = 1;
    for (long long i = 1; i <= ki; ++i) den = den * static_cast<std::uint64_t>(i) % p;
    // den^{p-2} is the inverse mod p.
    std::uint64_t inv = 1, base = den, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    result = result * c % p * inv % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

class SteenrodAlgebra {
 public:
  explicit SteenrodAlgebra(Prime p) : p_(p) {}

  Prime prime() const { return p_; }

  int degree(const Monomial& m) const {
    int d = 0;
    for (const auto& l : m) d += l.degree(p_.value());
    return d;
  }

  /// Every letter has the right kind for p, and exponents are positive.
  void validate(const Monomial& m) const {
    for (const auto& l : m) {
      const bool ok = p_.value() == 2 ? l.kind == Letter::Kind::sq : l.kind != Letter::Kind::sq;
      if (!ok) throw std::invalid_argument("letter " + l.to_string() + " is not used at p = " + std::to_string(p_.value()));
      if (l.exponent < 1) throw std::invalid_argument("letter exponents must be positive");
    }
  }

  bool is_admissible(const Monomial& m) const { return first_violation(m) == m.size(); }

  SteenrodElement unit() const { return monomial(Monomial{}); }

  SteenrodElement monomial(const Monomial& m, std::uint32_t coefficient = 1) const {
    SteenrodElement e;
    if (coefficient % p_.value() != 0) e.terms[m] = coefficient % p_.value();
    return e;
  }

  /// Admissible normal form of a word.
  SteenrodElement reduce(const Monomial& word) const {
    Monomial w;
    for (const auto& l : word) {
      if (l.exponent < 0) throw std::invalid_argument("negative exponent in " + l.to_string());
      if (l.exponent > 0) w.push_back(l);
    }
    validate(w);
    {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    }
    SteenrodElement out;
    const std::size_t i = first_violation(w);
    if (i == w.size()) {
      out.terms[w] = 1;
    } else {
      for (const auto& [coefficient, replacement] : adem(w, i)) {
        Monomial next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
        next.insert(next.end(), replacement.begin(), replacement.end());
        const std::size_t consumed = w[i + 1].kind == Letter::Kind::bockstein && w[i].kind == Letter::Kind::power ? 3 : 2;
        next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(i + consumed), w.end());
        add_into(out, reduce(next), coefficient);
      }
    }
    std::lock_guard lock(mutex_);
    memo_.emplace(w, out);
    return out;
  }

  SteenrodElement reduce(const SteenrodElement& x) const {
    SteenrodElement out;
    for (const auto& [m, c] : x.terms) add_into(out, reduce(m), c);
    return out;
  }

  SteenrodElement add(const SteenrodElement& a, const SteenrodElement& b) const {
    SteenrodElement out = a;
    add_into(out, b, 1);
    return out;
  }

  SteenrodElement scale(const SteenrodElement& a, std::uint32_t s) const {
    SteenrodElement out;
    add_into(out, a, s);
    return out;
  }

  SteenrodElement multiply(const SteenrodElement& a, const SteenrodElement& b) const {
    SteenrodElement out;
    for (const auto& [ma, ca] : a.terms) {
      for (const auto& [mb, cb] : b.terms) {
        Monomial w = ma;
        w.insert(w.end(), mb.begin(), mb.end());
        add_into(out, reduce(w), static_cast<std::uint32_t>(std::uint64_t{ca} * cb % p_.value()));
      }
    }
    return out;
  }

  /// Admissible monomials of degree n, in lexicographic order.
  std::vector<Monomial> basis(int n) const {
    if (n < 0) return {};
    {
      std::lock_guard lock(mutex_);
      if (auto it = basis_memo_.find(n); it != basis_memo_.end()) return it->second;
    }
    std::vector<Monomial> out;
    Monomial prefix;
    if (p_.value() == 2) {
      enumerate_even(n, n, prefix, out);
    } else {
      enumerate_odd(n, n, prefix, out);
    }
    std::sort(out.begin(), out.end());
    std::lock_guard lock(mutex_);
    basis_memo_.emplace(n, out);
    return out;
  }

  /// Single letters of degree 1..n.
  std::vector<Letter> letters_up_to(int n) const {
    std::vector<Letter> out;
    if (p_.value() == 2) {
      for (int i = 1; i <= n; ++i) out.push_back(Letter::sq(i));
    } else {
      if (n >= 1) out.push_back(Letter::bockstein());
      for (int i = 1; Letter::power(i).degree(p_.value()) <= n; ++i) out.push_back(Letter::power(i));
    }
    return out;
  }

  /// Algebra generators of degree <= n: Sq^{2^k}, or b and P^{p^k}.
  std::vector<Letter> indecomposables_up_to(int n) const {
    std::vector<Letter> out;
    if (p_.value() == 2) {
      for (int i = 1; i <= n; i *= 2) out.push_back(Letter::sq(i));
    } else {
      if (n >= 1) out.push_back(Letter::bockstein());
      for (int i = 1; Letter::power(i).degree(p_.value()) <= n; i *= static_cast<int>(p_.value())) {
        out.push_back(Letter::power(i));
      }
    }
    return out;
  }

  /// Q_0 = Sq1 (or b); Q_{i+1} = [Sq^{2^{i+1}}, Q_i] at p = 2 and
  /// [P^{p^i}, Q_i] at odd p.
  SteenrodElement milnor_primitive(int i) const {
    if (i < 0) throw std::invalid_argument("Milnor primitive index must be >= 0");
    const unsigned p = p_.value();
    SteenrodElement q = p == 2 ? monomial({Letter::sq(1)}) : monomial({Letter::bockstein()});
    long long power = 1;
    for (int k = 0; k < i; ++k) {
      SteenrodElement step;
      if (p == 2) {
        power *= 2;
        step = monomial({Letter::sq(static_cast<int>(power))});
      } else {
        step = monomial({Letter::power(static_cast<int>(power))});
        power *= p;
      }
      q = add(multiply(step, q), scale(multiply(q, step), p - 1));
    }
    return q;
  }

  /// A single word such as "Sq2 Sq2", "b P1", "Sq^4" or "1" (the unit).
  Monomial parse_word(const std::string& text) const {
    std::istringstream in(text);
    std::string token;
    Monomial m;
    while (in >> token) {
      if (token == "1") continue;
      const Letter l = parse_letter(token);
      if (l.exponent > 0) m.push_back(l);
    }
    validate(m);
    return m;
  }

  /// Sums of terms, each an optional integer coefficient followed by letters
  /// or Milnor primitives Q{i}: "Sq2 Sq2 + Sq3 Sq1", "2 P1 b", "Q1".
  SteenrodElement parse(const std::string& text) const {
    SteenrodElement out;
    for (const auto& term : split_terms(text)) {
      std::istringstream in(term);
      std::string token;
      SteenrodElement t = unit();
      bool first = true;
      while (in >> token) {
        if (first && is_integer(token)) {
          const long long c = std::stoll(token);
          const long long r = ((c % static_cast<long long>(p_.value())) + p_.value()) % p_.value();
          t = scale(t, static_cast<std::uint32_t>(r));
        } else if (token == "1") {
        } else if (token.size() > 1 && token[0] == 'Q' && is_integer(token.substr(1))) {
          t = multiply(t, milnor_primitive(std::stoi(token.substr(1))));
        } else {
          t = multiply(t, monomial({parse_letter(token)}));
        }
        first = false;
      }
      add_into(out, t, 1);
    }
    return out;
  }

  std::string to_string(const Monomial& m) const {
    if (m.empty()) return "1";
    std::string s;
    for (const auto& l : m) s += (s.empty() ? "" : " ") + l.to_string();
    return s;
  }

  std::string to_string(const SteenrodElement& x) const {
    if (x.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : x.terms) {
      if (!s.empty()) s += " + ";
      if (c != 1) s += std::to_string(c) + (m.empty() ? "" : " ");
      if (c != 1 && m.empty()) continue;
      s += to_string(m);
    }
    return s;
  }

  void add_into(SteenrodElement& out, const SteenrodElement& x, std::uint32_t s) const {
    const unsigned p = p_.value();
    s %= p;
    if (s == 0) return;
    for (const auto& [m, c] : x.terms) {
      const auto v = static_cast<std::uint32_t>((out.terms[m] + std::uint64_t{c} * s) % p);
      if (v == 0) {
        out.terms.erase(m);
      } else {
        out.terms[m] = v;
      }
    }
  }

 private:
  static bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  }

  static std::vector<std::string> split_terms(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
      if (ch == '+') {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    out.push_back(cur);
    for (const auto& t : out) {
      if (t.find_first_not_of(" \t") == std::string::npos) throw std::invalid_argument("empty term in '" + text + "'");
    }
    return out;
  }

  Letter parse_letter(std::string token) const {
    auto number = [&](std::size_t from) {
      std::string digits = token.substr(from);
      if (!digits.empty() && digits[0] == '^') digits = digits.substr(1);
      if (digits.empty() || !is_integer(digits) || digits[0] == '-') {
        throw std::invalid_argument("bad Steenrod letter '" + token + "'");
      }
      return std::stoi(digits);
    };
    Letter l{};
    if (token.rfind("Sq", 0) == 0) {
      l = Letter::sq(number(2));
    } else if (token == "b" || token == "beta") {
      l = Letter::bockstein();
    } else if (token.rfind("P", 0) == 0) {
      l = Letter::power(number(1));
    } else {
      throw std::invalid_argument("bad Steenrod letter '" + token + "'");
    }
    if (l.exponent > 0) validate({l});
    return l;
  }

  /// Index of the leftmost inadmissible spot, or m.size() when admissible.
  std::size_t first_violation(const Monomial& m) const {
    const long long p = p_.value();
    for (std::size_t i = 0; i + 1 < m.size(); ++i) {
      const auto& a = m[i];
      const auto& b = m[i + 1];
      if (p == 2) {
        if (a.exponent < 2 * b.exponent) return i;
        continue;
      }
      using K = Letter::Kind;
      if (a.kind == K::bockstein && b.kind == K::bockstein) return i;
      if (a.kind == K::power && b.kind == K::power && a.exponent < p * b.exponent) return i;
      if (a.kind == K::power && b.kind == K::bockstein && i + 2 < m.size() && m[i + 2].kind == K::power &&
          a.exponent < p * m[i + 2].exponent + 1) {
        return i;
      }
    }
    return m.size();
  }

  /// Right-hand side of the Adem relation for the spot at i.
  std::vector<std::pair<std::uint32_t, Monomial>> adem(const Monomial& m, std::size_t i) const {
    const unsigned p = p_.value();
    std::vector<std::pair<std::uint32_t, Monomial>> out;
    auto sign = [&](long long e) { return e % 2 == 0 ? 1u : p - 1; };
    auto push = [&](std::uint32_t c, Monomial w) {
      c %= p;
      if (c == 0) return;
      Monomial clean;
      for (const auto& l : w) {
        if (l.exponent > 0) clean.push_back(l);
      }
      out.emplace_back(c, std::move(clean));
    };
    const int a = m[i].exponent;
    if (p == 2) {
      const int b = m[i + 1].exponent;
      for (int c = 0; 2 * c <= a; ++c) {
        push(binomial_mod(b - c - 1, a - 2 * c, 2), {Letter::sq(a + b - c), Letter::sq(c)});
      }
      return out;
    }
    using K = Letter::Kind;
    if (m[i].kind == K::bockstein) return out;  // b b = 0
    const long long pl = p;
    if (m[i + 1].kind == K::power) {
      const int b = m[i + 1].exponent;
      for (int t = 0; pl * t <= a; ++t) {
        const auto c = static_cast<std::uint32_t>(std::uint64_t{sign(a + t)} *
                                                  binomial_mod((pl - 1) * (b - t) - 1, a - pl * t, p) % p);
        push(c, {Letter::power(a + b - t), Letter::power(t)});
      }
      return out;
    }
    const int b = m[i + 2].exponent;
    for (int t = 0; pl * t <= a; ++t) {
      const auto c = static_cast<std::uint32_t>(std::uint64_t{sign(a + t)} *
                                                binomial_mod((pl - 1) * (b - t), a - pl * t, p) % p);
      push(c, {Letter::bockstein(), Letter::power(a + b - t), Letter::power(t)});
    }
    for (int t = 0; pl * t <= a - 1; ++t) {
      const auto c = static_cast<std::uint32_t>(std::uint64_t{sign(a + t + 1)} *
                                                binomial_mod((pl - 1) * (b - t) - 1, a - pl * t - 1, p) % p);
      push(c, {Letter::power(a + b - t), Letter::bockstein(), Letter::power(t)});
    }
    return out;
  }

  /// p = 2: sequences with i_j >= 2 i_{j+1}, first entry at most `bound`.
  void enumerate_even(int n, int bound, Monomial& prefix, std::vector<Monomial>& out) const {
    if (n == 0) {
      out.push_back(prefix);
      return;
    }
    for (int i = 1; i <= std::min(n, bound); ++i) {
      prefix.push_back(Letter::sq(i));
      enumerate_even(n - i, i / 2, prefix, out);
      prefix.pop_back();
    }
  }

  /// Odd p: b^{e0} P^{s1} b^{e1} ... with s_i >= p s_{i+1} + e_i; `bound`
  /// caps p s_next + e for the next block.
  void enumerate_odd(int n, int bound, Monomial& prefix, std::vector<Monomial>& out) const {
    const int p = static_cast<int>(p_.value());
    const int unit = 2 * (p - 1);
    for (int e = 0; e <= 1; ++e) {
      if (e > n || e > bound) break;
      if (e) prefix.push_back(Letter::bockstein());
      if (n - e == 0) {
        out.push_back(prefix);
      } else {
        for (int s = 1; s * unit <= n - e && p * s + e <= bound; ++s) {
          prefix.push_back(Letter::power(s));
          enumerate_odd(n - e - s * unit, s, prefix, out);
          prefix.pop_back();
        }
      }
      if (e) prefix.pop_back();
    }
  }

  Prime p_;
  mutable std::mutex mutex_;
  mutable std::map<Monomial, SteenrodElement> memo_;
  mutable std::map<int, std::vector<Monomial>> basis_memo_;
};

}  // namespace nucleus
