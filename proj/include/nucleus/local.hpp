#pragma once

// Exact arithmetic in the local ring Z_(p): rationals whose denominators are
// prime to p.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nucleus {

using BigInt = boost::multiprecision::cpp_int;

/// Valuation of zero.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

class Prime {
 public:
  explicit Prime(unsigned value) : value_(value) {
    if (!is_prime(value)) {
      throw std::invalid_argument("not a prime: " + std::to_string(value));
    }
  }

  unsigned value() const { return value_; }
  operator unsigned() const { return value_; }

  friend bool operator==(Prime, Prime) = default;
  friend auto operator<=>(Prime, Prime) = default;

  static bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  }

 private:
  unsigned value_;
};

class LocalScalar {
 public:
  explicit LocalScalar(Prime p) : p_(p), num_(0), den_(1) {}
  LocalScalar(Prime p, BigInt num, BigInt den = 1)
      : p_(p), num_(std::move(num)), den_(std::move(den)) {
    normalize();
  }

  Prime prime() const { return p_; }
  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_unit() const { return !is_zero() && valuation() == 0; }

  /// Exponent v with x = u * p^v, u a unit; kInfiniteValuation for zero.
  int valuation() const {
    if (num_ == 0) return kInfiniteValuation;
    int v = 0;
    BigInt n = abs(num_);
    const BigInt pp = p_.value();
    while (n % pp == 0) {
      n /= pp;
      ++v;
    }
    return v;
  }

  /// The unit part u of x = u * p^v. Requires x != 0.
  LocalScalar unit_part() const {
    if (is_zero()) throw std::domain_error("unit part of zero");
    BigInt n = num_;
    const BigInt pp = p_.value();
    while (n % pp == 0) n /= pp;
    return LocalScalar(p_, n, den_);
  }

  LocalScalar inverse() const {
    if (!is_unit()) {
      throw std::domain_error("not a unit in Z_(" + std::to_string(p_.value()) +
                              "): " + to_string());
    }
    return LocalScalar(p_, den_, num_);
  }

  /// x / y for y dividing x in Z_(p), i.e. v(x) >= v(y).
  LocalScalar exact_div(const LocalScalar& y) const {
    check_prime(y);
    if (y.is_zero()) throw std::domain_error("division by zero");
    if (is_zero()) return LocalScalar(p_);
    if (valuation() < y.valuation()) {
      throw std::domain_error(to_string() + " is not divisible by " + y.to_string());
    }
    return LocalScalar(p_, num_ * y.den_, den_ * y.num_);
  }

  bool divides(const LocalScalar& x) const {
    if (is_zero()) return x.is_zero();
    return x.valuation() >= valuation();
  }

  static LocalScalar power_of_p(Prime p, int e) {
    BigInt r = 1;
    for (int i = 0; i < e; ++i) r *= p.value();
    return LocalScalar(p, r);
  }

  /// Residue class in F_p.
  std::uint32_t mod_p() const {
    const BigInt pp = p_.value();
    BigInt n = num_ % pp;
    if (n < 0) n += pp;
    BigInt d = den_ % pp;
    // d is invertible mod p; brute inverse is fine for the small primes used here.
    auto dn = static_cast<std::uint64_t>(d);
    std::uint64_t inv = 1;
    for (std::uint64_t k = 1; k < p_.value(); ++k) {
      if ((dn * k) % p_.value() == 1) {
        inv = k;
        break;
      }
    }
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(n) * inv) % p_.value());
  }

  LocalScalar operator-() const { return LocalScalar(p_, -num_, den_); }

  friend LocalScalar operator+(const LocalScalar& a, const LocalScalar& b) {
    a.check_prime(b);
    return LocalScalar(a.p_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend LocalScalar operator-(const LocalScalar& a, const LocalScalar& b) {
    a.check_prime(b);
    return LocalScalar(a.p_, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend LocalScalar operator*(const LocalScalar& a, const LocalScalar& b) {
    a.check_prime(b);
    return LocalScalar(a.p_, a.num_ * b.num_, a.den_ * b.den_);
  }
  LocalScalar& operator+=(const LocalScalar& b) { return *this = *this + b; }
  LocalScalar& operator-=(const LocalScalar& b) { return *this = *this - b; }
  LocalScalar& operator*=(const LocalScalar& b) { return *this = *this * b; }

  friend bool operator==(const LocalScalar& a, const LocalScalar& b) {
    return a.p_ == b.p_ && a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// "num/den" with den > 0, always written with the slash.
  std::string to_string() const { return num_.str() + "/" + den_.str(); }

  /// Accepts "n", "n/d" (whitespace-free).
  static LocalScalar parse(Prime p, std::string_view text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string_view::npos) {
        return LocalScalar(p, BigInt(std::string(text)));
      }
      return LocalScalar(p, BigInt(std::string(text.substr(0, slash))),
                         BigInt(std::string(text.substr(slash + 1))));
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("malformed scalar '" + std::string(text) + "'");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const LocalScalar& x) {
    return os << x.to_string();
  }

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("zero denominator");
    if (den_ < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    if (den_ % p_.value() == 0) {
      // Allowed only if the fraction reduces to a p-free denominator.
      BigInt g = gcd(num_, den_);
      if ((den_ / g) % p_.value() == 0) {
        throw std::domain_error("denominator divisible by p: " + num_.str() + "/" + den_.str());
      }
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    BigInt g = gcd(abs(num_), den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  void check_prime(const LocalScalar& other) const {
    if (p_ != other.p_) throw std::invalid_argument("mixed primes in Z_(p) arithmetic");
  }

  Prime p_;
  BigInt num_;
  BigInt den_;
};

}  // namespace nucleus
