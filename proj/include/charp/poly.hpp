#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>

#include "charp/arith.hpp"
#include "charp/error.hpp"

namespace charp {

/// Exponent vector λ = (λ_1..λ_d) of a monomial x^λ, with its total degree cached.
class Exponent {
 public:
  using Storage = boost::container::small_vector<std::uint32_t, 4>;

  Exponent() = default;
  explicit Exponent(std::size_t d) : c_(d, 0) {}
  Exponent(std::initializer_list<std::uint32_t> il) : c_(il.begin(), il.end()) { recount(); }
  explicit Exponent(std::span<const std::uint32_t> v) : c_(v.begin(), v.end()) { recount(); }

  std::size_t size() const noexcept { return c_.size(); }
  std::uint32_t operator[](std::size_t i) const noexcept { return c_[i]; }
  std::uint64_t degree() const noexcept { return deg_; }
  const Storage& components() const noexcept { return c_; }

  void set(std::size_t i, std::uint32_t v) {
    deg_ = deg_ - c_[i] + v;
    c_[i] = v;
  }

  bool isZero() const noexcept { return deg_ == 0; }

  /// True when x^this divides x^other.
  bool divides(const Exponent& other) const noexcept {
    if (deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] > other.c_[i]) return false;
    return true;
  }

  friend Exponent operator+(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::uint64_t s = std::uint64_t{a.c_[i]} + b.c_[i];
      if (s > std::numeric_limits<std::uint32_t>::max()) throw DomainError("exponent overflow");
      r.c_[i] = static_cast<std::uint32_t>(s);
    }
    r.deg_ = a.deg_ + b.deg_;
    return r;
  }

  /// a - b; requires b | a.
  friend Exponent operator-(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
    r.deg_ = a.deg_ - b.deg_;
    return r;
  }

  Exponent scaled(std::uint64_t k) const {
    Exponent r(size());
    for (std::size_t i = 0; i < size(); ++i) {
      std::uint64_t v = std::uint64_t{c_[i]} * k;
      if (v > std::numeric_limits<std::uint32_t>::max()) throw DomainError("exponent overflow");
      r.c_[i] = static_cast<std::uint32_t>(v);
    }
    r.deg_ = deg_ * k;
    return r;
  }

  static Exponent lcm(const Exponent& a, const Exponent& b) {
    Exponent r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.c_[i] = std::max(a.c_[i], b.c_[i]);
    r.recount();
    return r;
  }

  static bool coprime(const Exponent& a, const Exponent& b) noexcept {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.c_[i] && b.c_[i]) return false;
    return true;
  }

  friend bool operator==(const Exponent& a, const Exponent& b) noexcept {
    return a.deg_ == b.deg_ && a.c_ == b.c_;
  }

  friend std::size_t hash_value(const Exponent& e) noexcept {
    return boost::hash_range(e.c_.begin(), e.c_.end());
  }

 private:
  void recount() noexcept {
    deg_ = 0;
    for (auto v : c_) deg_ += v;
  }

  Storage c_;
  std::uint64_t deg_ = 0;
};

/// Degree-lexicographic comparison: total degree first, then lexicographic.
inline std::strong_ordering degLexCompare(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw DomainError("exponent dimension mismatch");
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

struct DegLexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const { return degLexCompare(a, b) > 0; }
};
struct DegLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const { return degLexCompare(a, b) < 0; }
};

/// The box I_e = {λ : 0 <= λ_i < p^e} of exponents that index the Frobenius
/// decomposition at level e. Membership is tested arithmetically; the box
/// itself is only materialized on request.
class ExponentBox {
 public:
  ExponentBox(const FieldConfig& ring, unsigned e) : d_(ring.d), e_(e) {
    if (e < 1) throw DomainError("Frobenius level must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
      if (q > std::numeric_limits<std::uint32_t>::max() / ring.p)
        throw DomainError("p^e does not fit in an exponent");
      q *= ring.p;
    }
    q_ = static_cast<std::uint32_t>(q);
    p_ = ring.p;
  }

  unsigned level() const noexcept { return e_; }
  std::uint32_t q() const noexcept { return q_; }

  bool contains(const Exponent& l) const noexcept {
    if (l.size() != d_) return false;
    for (std::size_t i = 0; i < d_; ++i)
      if (l[i] >= q_) return false;
    return true;
  }

  /// μ_e = (p^e - 1, ..., p^e - 1).
  Exponent muE() const {
    Exponent m(d_);
    for (std::size_t i = 0; i < d_; ++i) m.set(i, q_ - 1);
    return m;
  }

  /// |I_e| = p^(e d).
  BigInt cardinality() const { return bigPow(p_, e_ * d_); }

  /// All members in ascending deg-lex order. Exponential in e*d; for tests.
  std::vector<Exponent> members() const {
    std::vector<Exponent> out;
    Exponent cur(d_);
    for (;;) {
      out.push_back(cur);
      std::size_t i = 0;
      while (i < d_ && cur[i] + 1 == q_) cur.set(i++, 0);
      if (i == d_) break;
      cur.set(i, cur[i] + 1);
    }
    std::sort(out.begin(), out.end(), DegLexLess{});
    return out;
  }

 private:
  std::uint32_t d_;
  unsigned e_;
  std::uint32_t p_ = 2;
  std::uint32_t q_ = 1;
};

/// All exponents of the given total degree in d variables, ascending deg-lex.
inline std::vector<Exponent> monomialsOfDegree(std::size_t d, std::uint32_t degree) {
  std::vector<Exponent> out;
  Exponent cur(d);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == d) {
      cur.set(i, left);
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      cur.set(i, v);
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), DegLexLess{});
  return out;
}

struct Term {
  Exponent exp;
  std::uint32_t coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over F_p. Terms are stored with nonzero coefficients in
/// strictly descending deg-lex order, so terms().front() is the leading term.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const FieldConfig& ring) : ring_(ring) {}

  static Polynomial constant(const FieldConfig& ring, std::int64_t c) {
    Polynomial f(ring);
    auto v = ring.reduce(c);
    if (v) f.terms_.push_back({Exponent(ring.d), v});
    return f;
  }

  static Polynomial variable(const FieldConfig& ring, std::size_t i) {
    if (i >= ring.d) throw DomainError("variable index out of range");
    Exponent e(ring.d);
    e.set(i, 1);
    return monomial(ring, std::move(e), 1);
  }

  static Polynomial monomial(const FieldConfig& ring, Exponent e, std::uint32_t coeff = 1) {
    if (e.size() != ring.d) throw DomainError("exponent dimension mismatch");
    Polynomial f(ring);
    coeff %= ring.p;
    if (coeff) f.terms_.push_back({std::move(e), coeff});
    return f;
  }

  /// Builds a polynomial from unordered terms, combining duplicates.
  static Polynomial fromTerms(const FieldConfig& ring, std::vector<Term> terms) {
    for (const auto& t : terms)
      if (t.exp.size() != ring.d) throw DomainError("exponent dimension mismatch");
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return degLexCompare(a.exp, b.exp) > 0; });
    Polynomial f(ring);
    for (auto& t : terms) {
      std::uint32_t c = t.coeff % ring.p;
      if (!f.terms_.empty() && f.terms_.back().exp == t.exp) {
        f.terms_.back().coeff = ring.add(f.terms_.back().coeff, c);
        if (f.terms_.back().coeff == 0) f.terms_.pop_back();
      } else if (c) {
        f.terms_.push_back({std::move(t.exp), c});
      }
    }
    return f;
  }

  /// Trusted constructor: terms must already be nonzero and strictly
  /// descending in deg-lex order.
  static Polynomial fromSortedTerms(const FieldConfig& ring, std::vector<Term> terms) {
    Polynomial f(ring);
    f.terms_ = std::move(terms);
    return f;
  }

  const FieldConfig& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool isZero() const noexcept { return terms_.empty(); }
  bool isConstant() const noexcept { return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.isZero()); }

  const Term& leadingTerm() const {
    if (isZero()) throw DomainError("leading term of zero polynomial");
    return terms_.front();
  }
  const Exponent& leadingExponent() const { return leadingTerm().exp; }
  std::uint32_t leadingCoeff() const { return leadingTerm().coeff; }

  /// Total degree; 0 for the zero polynomial.
  std::uint64_t totalDegree() const noexcept { return isZero() ? 0 : terms_.front().exp.degree(); }

  /// Value at the origin.
  std::uint32_t constantTerm() const noexcept {
    return (!isZero() && terms_.back().exp.isZero()) ? terms_.back().coeff : 0;
  }

  /// Coefficient of x^e (zero if absent).
  std::uint32_t coeff(const Exponent& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return degLexCompare(t.exp, x) > 0; });
    return (it != terms_.end() && it->exp == e) ? it->coeff : 0;
  }

  Polynomial monic() const {
    if (isZero()) return *this;
    return scaled(ring_.inv(leadingCoeff()));
  }

  Polynomial scaled(std::uint32_t c) const {
    c %= ring_.p;
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.exp, ring_.mul(t.coeff, c)});
    return r;
  }

  /// c * x^e * this. Multiplying by a monomial preserves deg-lex order.
  Polynomial mulTerm(const Exponent& e, std::uint32_t c) const {
    Polynomial r(ring_);
    c %= ring_.p;
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.exp + e, ring_.mul(t.coeff, c)});
    return r;
  }

  /// this - c * x^e * g, the elementary reduction step.
  Polynomial subMulTerm(std::uint32_t c, const Exponent& e, const Polynomial& g) const {
    return mergeAdd(*this, g, ring_.neg(c % ring_.p), &e);
  }

  Polynomial operator-() const { return scaled(ring_.neg(1)); }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    checkRing(a, b);
    return mergeAdd(a, b, 1, nullptr);
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    checkRing(a, b);
    return mergeAdd(a, b, a.ring_.neg(1), nullptr);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    checkRing(a, b);
    if (a.isZero() || b.isZero()) return Polynomial(a.ring_);
    if (a.size() == 1) return b.mulTerm(a.terms_[0].exp, a.terms_[0].coeff);
    if (b.size() == 1) return a.mulTerm(b.terms_[0].exp, b.terms_[0].coeff);
    const FieldConfig& R = a.ring_;
    std::unordered_map<Exponent, std::uint32_t, boost::hash<Exponent>> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) {
        auto [it, fresh] = acc.try_emplace(s.exp + t.exp, 0u);
        it->second = R.add(it->second, R.mul(s.coeff, t.coeff));
      }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (c) out.push_back({e, c});
    std::sort(out.begin(), out.end(),
              [](const Term& x, const Term& y) { return degLexCompare(x.exp, y.exp) > 0; });
    Polynomial r(R);
    r.terms_ = std::move(out);
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  /// Canonical text: terms in descending deg-lex order, coefficients in
  /// [1, p), variables x,y,z when d <= 3 and x1..xd otherwise.
  std::string str() const {
    if (isZero()) return "0";
    std::string s;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      const auto& t = terms_[k];
      if (k) s += '+';
      bool first = true;
      if (t.coeff != 1 || t.exp.isZero()) {
        s += std::to_string(t.coeff);
        first = false;
      }
      for (std::size_t i = 0; i < t.exp.size(); ++i) {
        if (!t.exp[i]) continue;
        if (!first) s += '*';
        first = false;
        s += variableName(ring_, i);
        if (t.exp[i] > 1) s += "^" + std::to_string(t.exp[i]);
      }
    }
    return s;
  }

  static std::string variableName(const FieldConfig& ring, std::size_t i) {
    static constexpr const char* kShort[] = {"x", "y", "z"};
    return ring.d <= 3 ? kShort[i] : "x" + std::to_string(i + 1);
  }

 private:
  static void checkRing(const Polynomial& a, const Polynomial& b) {
    if (!(a.ring_ == b.ring_)) throw DomainError("polynomials from different rings");
  }

  // a + c * x^shift * b (shift may be null), by a sorted merge.
  static Polynomial mergeAdd(const Polynomial& a, const Polynomial& b, std::uint32_t c, const Exponent* shift) {
    const FieldConfig& R = a.ring_;
    Polynomial r(R);
    if (c == 0) return a;
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    Exponent bj;
    auto loadB = [&] {
      if (j < b.size()) bj = shift ? b.terms_[j].exp + *shift : b.terms_[j].exp;
    };
    loadB();
    while (i < a.size() || j < b.size()) {
      if (j == b.size()) {
        r.terms_.push_back(a.terms_[i++]);
        continue;
      }
      if (i == a.size()) {
        r.terms_.push_back({bj, R.mul(b.terms_[j].coeff, c)});
        ++j;
        loadB();
        continue;
      }
      auto cmp = degLexCompare(a.terms_[i].exp, bj);
      if (cmp > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back({bj, R.mul(b.terms_[j].coeff, c)});
        ++j;
        loadB();
      } else {
        std::uint32_t v = R.add(a.terms_[i].coeff, R.mul(b.terms_[j].coeff, c));
        if (v) r.terms_.push_back({a.terms_[i].exp, v});
        ++i;
        ++j;
        loadB();
      }
    }
    return r;
  }

  FieldConfig ring_;
  std::vector<Term> terms_;
};

/// ord at the origin: least total degree of a term; nullopt stands for
/// infinity (the zero polynomial).
inline std::optional<std::uint64_t> ordAtOrigin(const Polynomial& f) {
  if (f.isZero()) return std::nullopt;
  std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
  for (const auto& t : f.terms()) m = std::min(m, t.exp.degree());
  return m;
}

/// f^(p^e), term by term: (sum c x^λ)^(p^e) = sum c x^(p^e λ) since c^p = c.
inline Polynomial frobPower(const Polynomial& f, unsigned e) {
  if (e == 0 || f.isZero()) return f;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= f.ring().p;
    if (q > std::numeric_limits<std::uint32_t>::max()) throw DomainError("exponent overflow in Frobenius power");
  }
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) out.push_back({t.exp.scaled(q), t.coeff});
  // Scaling exponents by q preserves deg-lex order.
  return Polynomial::fromSortedTerms(f.ring(), std::move(out));
}

namespace detail {
inline Polynomial smallPow(Polynomial base, std::uint64_t n) {
  Polynomial r = Polynomial::constant(base.ring(), 1);
  while (n) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}
}  // namespace detail

/// f^n with n split p-adically: f^n = prod_i (f^(n_i))^(p^i).
inline Polynomial mulPow(const Polynomial& f, std::uint64_t n) {
  const FieldConfig& R = f.ring();
  if (n == 0) return Polynomial::constant(R, 1);
  if (f.isZero()) return f;
  Polynomial r = Polynomial::constant(R, 1);
  unsigned level = 0;
  while (n) {
    std::uint64_t digit = n % R.p;
    if (digit) r *= frobPower(detail::smallPow(f, digit), level);
    n /= R.p;
    ++level;
  }
  return r;
}

}  // namespace charp
