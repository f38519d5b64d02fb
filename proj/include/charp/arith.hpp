#pragma once

// Exact scalars: prime-field elements and arbitrary precision rationals.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "charp/error.hpp"

namespace charp {

using BigInt = boost::multiprecision::cpp_int;

constexpr bool isPrime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

/// Characteristic and number of variables of F_p[x_1..x_d].
struct FieldConfig {
  std::uint32_t p = 2;
  std::uint32_t d = 1;

  FieldConfig() = default;
  FieldConfig(std::uint32_t prime, std::uint32_t vars) : p(prime), d(vars) {
    if (!isPrime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (d < 1) throw DomainError("number of variables must be at least 1");
    // Products of two residues must fit in 64 bits.
    if (p > 0xFFFFFFFBu) throw DomainError("characteristic does not fit a machine word");
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t n) const noexcept {
    std::uint32_t r = 1 % p;
    while (n) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
      n >>= 1;
    }
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (a % p == 0) throw DivisionByZero();
    // Extended Euclid on (a, p).
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
  }
  /// Reduces an arbitrary signed integer into [0, p).
  std::uint32_t reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
  }

  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

/// An element of F_p carrying its modulus.
class Fp {
 public:
  Fp(std::uint64_t value, std::uint32_t p) : p_(p), v_(static_cast<std::uint32_t>(value % p)) {
    if (!isPrime(p)) throw DomainError("modulus is not prime");
  }

  std::uint32_t value() const noexcept { return v_; }
  std::uint32_t modulus() const noexcept { return p_; }
  bool isZero() const noexcept { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) { return Fp(Raw{}, a.check(b), std::uint64_t{a.v_} + b.v_); }
  friend Fp operator-(Fp a, Fp b) { return Fp(Raw{}, a.check(b), std::uint64_t{a.v_} + a.p_ - b.v_); }
  friend Fp operator*(Fp a, Fp b) { return Fp(Raw{}, a.check(b), std::uint64_t{a.v_} * b.v_); }
  Fp operator-() const { return Fp(Raw{}, p_, std::uint64_t{p_} - v_); }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }

  Fp pow(std::uint64_t n) const {
    Fp r(Raw{}, p_, 1), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      b = b * b;
      n >>= 1;
    }
    return r;
  }

  Fp inverse() const {
    if (v_ == 0) throw DivisionByZero();
    return pow(p_ - 2);
  }

  friend bool operator==(const Fp&, const Fp&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

 private:
  struct Raw {};
  Fp(Raw, std::uint32_t p, std::uint64_t raw) : p_(p), v_(static_cast<std::uint32_t>(raw % p)) {}
  std::uint32_t check(const Fp& o) const {
    if (o.p_ != p_) throw DomainError("mixed characteristics in F_p arithmetic");
    return p_;
  }

  std::uint32_t p_;
  std::uint32_t v_;
};

inline Fp fpInverse(const Fp& a) { return a.inverse(); }

/// Exact rational number, always normalized with a positive denominator.
class Ratio {
 public:
  using Rep = boost::multiprecision::cpp_rational;

  Ratio() = default;
  Ratio(long long n) : r_(n) {}  // NOLINT: implicit from integers is intended
  Ratio(const BigInt& n) : r_(n) {}  // NOLINT
  Ratio(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    r_ = den < 0 ? Rep(-num, -den) : Rep(num, den);
  }
  explicit Ratio(const Rep& r) : r_(r) {}

  /// Parses "a", "-a" or "a/b".
  static Ratio parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto toInt = [&](std::string_view s) {
      s = trim(s);
      std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i == s.size()) throw ParseError("expected integer in rational literal '" + std::string(text) + "'", 0);
      for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
          throw ParseError("invalid character in rational literal '" + std::string(text) + "'", k);
      return BigInt(std::string(s));
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Ratio(toInt(text));
    return Ratio(toInt(text.substr(0, slash)), toInt(text.substr(slash + 1)));
  }

  BigInt num() const { return boost::multiprecision::numerator(r_); }
  BigInt den() const { return boost::multiprecision::denominator(r_); }
  const Rep& rep() const noexcept { return r_; }

  bool isZero() const { return r_ == 0; }
  bool isInteger() const { return den() == 1; }
  int sign() const { return r_.sign(); }

  std::string str() const {
    BigInt n = num(), d = den();
    return d == 1 ? n.str() : n.str() + "/" + d.str();
  }

  friend Ratio operator+(const Ratio& a, const Ratio& b) { return Ratio(Rep(a.r_ + b.r_)); }
  friend Ratio operator-(const Ratio& a, const Ratio& b) { return Ratio(Rep(a.r_ - b.r_)); }
  friend Ratio operator*(const Ratio& a, const Ratio& b) { return Ratio(Rep(a.r_ * b.r_)); }
  friend Ratio operator/(const Ratio& a, const Ratio& b) {
    if (b.isZero()) throw DomainError("rational division by zero");
    return Ratio(Rep(a.r_ / b.r_));
  }
  Ratio operator-() const { return Ratio(Rep(-r_)); }
  Ratio& operator+=(const Ratio& o) { return *this = *this + o; }

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.r_ == b.r_; }
  friend auto operator<=>(const Ratio& a, const Ratio& b) {
    return a.r_ < b.r_ ? std::strong_ordering::less
                       : (a.r_ == b.r_ ? std::strong_ordering::equal : std::strong_ordering::greater);
  }
  friend std::ostream& operator<<(std::ostream& os, const Ratio& r) { return os << r.str(); }

 private:
  Rep r_{0};
};

/// Smallest integer >= t.
inline BigInt ceilRatio(const Ratio& t) {
  BigInt n = t.num(), d = t.den();
  BigInt q = n / d;  // truncates toward zero
  if (n % d != 0 && n > 0) q += 1;
  return q;
}

/// Largest integer <= t.
inline BigInt floorRatio(const Ratio& t) {
  BigInt n = t.num(), d = t.den();
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

inline BigInt bigPow(std::uint64_t base, unsigned exp) {
  BigInt r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace charp
