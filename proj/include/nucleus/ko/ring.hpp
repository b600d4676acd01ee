#pragma once

// pi_*(ko) at p = 2: Z_(2)[eta, alpha, beta] / (2 eta, eta^3, eta alpha, alpha^2 - 4 beta)
// with |eta| = 1, |alpha| = 4, |beta| = 8. In each degree there is at most one
// basis element: beta^k, eta beta^k, eta^2 beta^k, alpha beta^k.

#include "nucleus/local.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nucleus {

enum class KoBasis { none, beta, eta, eta2, alpha };

/// Basis element of degree n, by n mod 8.
inline KoBasis ko_basis(int n) {
  if (n < 0) return KoBasis::none;
  switch (n % 8) {
    case 0: return KoBasis::beta;
    case 1: return KoBasis::eta;
    case 2: return KoBasis::eta2;
    case 4: return KoBasis::alpha;
    default: return KoBasis::none;
  }
}

inline bool ko_torsion(KoBasis b) { return b == KoBasis::eta || b == KoBasis::eta2; }

/// Name of the basis element in degree n: "e", "beta^2", "eta*beta", "alpha".
inline std::string ko_basis_name(int n) {
  const KoBasis b = ko_basis(n);
  if (b == KoBasis::none) return "0";
  const int k = n / 8;
  std::string head;
  switch (b) {
    case KoBasis::eta: head = "eta"; break;
    case KoBasis::eta2: head = "eta2"; break;
    case KoBasis::alpha: head = "alpha"; break;
    default: break;
  }
  std::string tail = k == 0 ? "" : (k == 1 ? "beta" : "beta^" + std::to_string(k));
  if (head.empty()) return tail.empty() ? "e" : tail;
  return tail.empty() ? head : head + "*" + tail;
}

/// c times the basis element of its degree; torsion coefficients live in {0, 1}.
class KoElement {
 public:
  KoElement(int degree, LocalScalar c) : degree_(degree), c_(std::move(c)) { normalize(); }
  KoElement(int degree, long c) : KoElement(degree, LocalScalar(Prime(2), c)) {}

  static KoElement zero(int degree) { return KoElement(degree, 0); }
  static KoElement unit() { return KoElement(0, 1); }
  static KoElement eta() { return KoElement(1, 1); }
  static KoElement eta2() { return KoElement(2, 1); }
  static KoElement alpha() { return KoElement(4, 1); }
  static KoElement beta(int k = 1) { return KoElement(8 * k, 1); }

  int degree() const { return degree_; }
  const LocalScalar& coefficient() const { return c_; }
  bool is_zero() const { return c_.is_zero(); }
  KoBasis basis() const { return ko_basis(degree_); }

  friend bool operator==(const KoElement& a, const KoElement& b) { return a.degree_ == b.degree_ && a.c_ == b.c_; }

  friend KoElement operator+(const KoElement& a, const KoElement& b) {
    if (a.degree_ != b.degree_) throw std::invalid_argument("adding ko elements of different degrees");
    return KoElement(a.degree_, a.c_ + b.c_);
  }

  KoElement scaled(const LocalScalar& s) const { return KoElement(degree_, c_ * s); }

  /// "4 beta", "eta*beta", "0", "e".
  std::string to_string() const {
    if (is_zero()) return "0";
    const std::string name = ko_basis_name(degree_);
    if (c_ == LocalScalar(Prime(2), 1)) return name;
    const std::string c = c_.denominator() == 1 ? c_.numerator().str() : c_.to_string();
    return c + " " + name;
  }

 private:
  void normalize() {
    if (degree_ < 0) throw std::invalid_argument("ko has no negative degrees");
    const KoBasis b = ko_basis(degree_);
    if (b == KoBasis::none) c_ = LocalScalar(Prime(2));
    else if (ko_torsion(b)) c_ = LocalScalar(Prime(2), static_cast<long>(c_.mod_p()));
  }

  int degree_;
  LocalScalar c_;
};

/// Product of basis elements as a multiple of the basis element in the sum degree.
inline long ko_structure_constant(int m, int n) {
  const KoBasis a = ko_basis(m), b = ko_basis(n);
  if (a == KoBasis::none || b == KoBasis::none) return 0;
  auto eta_power = [](KoBasis x) { return x == KoBasis::eta ? 1 : x == KoBasis::eta2 ? 2 : 0; };
  const int e = eta_power(a) + eta_power(b);
  const bool has_alpha_a = a == KoBasis::alpha, has_alpha_b = b == KoBasis::alpha;
  if (e > 2) return 0;                                // eta^3
  if (e > 0 && (has_alpha_a || has_alpha_b)) return 0;  // eta alpha
  if (has_alpha_a && has_alpha_b) return 4;           // alpha^2 = 4 beta
  return 1;
}

inline KoElement ko_mul(const KoElement& x, const KoElement& y) {
  const int n = x.degree() + y.degree();
  return KoElement(n, x.coefficient() * y.coefficient() * LocalScalar(Prime(2), ko_structure_constant(x.degree(), y.degree())));
}

struct KoGroup {
  enum class Kind { zero, integers, two_torsion };
  Kind kind;
  std::string generator;

  /// "Z, generator alpha*beta", "Z/2, generator eta", "0".
  std::string to_string() const {
    switch (kind) {
      case Kind::zero: return "0";
      case Kind::integers: return "Z, generator " + generator;
      case Kind::two_torsion: return "Z/2, generator " + generator;
    }
    return "?";
  }
};

inline KoGroup ko_group(int n) {
  if (n < 0) throw std::invalid_argument("ko_group needs n >= 0");
  const KoBasis b = ko_basis(n);
  if (b == KoBasis::none) return {KoGroup::Kind::zero, ""};
  return {ko_torsion(b) ? KoGroup::Kind::two_torsion : KoGroup::Kind::integers, ko_basis_name(n)};
}

/// "3 alpha*beta^2", "a*a", "2 e", "eta2". Factors may repeat; the product is
/// taken in the ring. Aliases: a = alpha, b = beta, 1 = b0 = e.
inline KoElement parse_ko_element(const std::string& text) {
  std::string s;
  bool pending = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending = !s.empty();
      continue;
    }
    if (pending && ch != '*' && s.back() != '*') s += ' ';
    pending = false;
    s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty ko element");

  const auto numeric = [](const std::string& t) { return t.find_first_not_of("-0123456789/") == std::string::npos; };
  LocalScalar coefficient(Prime(2), 1);
  std::string word = s;
  if (const auto space = s.find(' '); space != std::string::npos && numeric(s.substr(0, space))) {
    coefficient = LocalScalar::parse(Prime(2), s.substr(0, space));
    word = s.substr(space + 1);
  } else if (numeric(s)) {
    return KoElement(0, LocalScalar::parse(Prime(2), s));
  }
  KoElement acc = KoElement::unit().scaled(coefficient);
  std::size_t start = 0;
  while (start <= word.size()) {
    const auto star = word.find('*', start);
    std::string f = word.substr(start, star == std::string::npos ? std::string::npos : star - start);
    while (!f.empty() && f.front() == ' ') f.erase(f.begin());
    while (!f.empty() && f.back() == ' ') f.pop_back();
    int power = 1;
    if (const auto caret = f.find('^'); caret != std::string::npos) {
      try {
        std::size_t used = 0;
        power = std::stoi(f.substr(caret + 1), &used);
        if (used != f.size() - caret - 1 || power < 0) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in ko factor '" + f + "'");
      }
      f = f.substr(0, caret);
    }
    KoElement factor = KoElement::unit();
    if (f == "e" || f == "1" || f == "b0") factor = KoElement::unit();
    else if (f == "eta") factor = KoElement::eta();
    else if (f == "eta2") factor = KoElement::eta2();
    else if (f == "alpha" || f == "a") factor = KoElement::alpha();
    else if (f == "beta" || f == "b") factor = KoElement::beta();
    else throw std::invalid_argument("unknown ko generator '" + f + "' (expected e, eta, eta2, alpha, beta^k)");
    for (int i = 0; i < power; ++i) acc = ko_mul(acc, factor);
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return acc;
}

}  // namespace nucleus
