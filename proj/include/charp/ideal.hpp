#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charp/groebner.hpp"
#include "charp/poly.hpp"

namespace charp {

/// A finitely generated ideal of F_p[x_1..x_d]. The reduced Groebner basis is
/// computed on first use and shared between copies of the handle; once
/// computed it never changes, so a handle can be read from several threads.
class Ideal {
 public:
  Ideal() : Ideal(FieldConfig{}) {}
  explicit Ideal(const FieldConfig& ring, std::vector<Polynomial> generators = {}, GbOptions opts = {})
      : ring_(ring), opts_(opts), cache_(std::make_shared<Cache>()) {
    for (auto& g : generators) {
      if (!(g.ring() == ring)) throw DomainError("generator from a different ring");
      if (!g.isZero()) gens_.push_back(std::move(g));
    }
  }

  static Ideal unit(const FieldConfig& ring, GbOptions opts = {}) {
    return Ideal(ring, {Polynomial::constant(ring, 1)}, opts);
  }
  static Ideal zero(const FieldConfig& ring, GbOptions opts = {}) { return Ideal(ring, {}, opts); }
  static Ideal maximalAtOrigin(const FieldConfig& ring, GbOptions opts = {}) {
    std::vector<Polynomial> g;
    for (std::size_t i = 0; i < ring.d; ++i) g.push_back(Polynomial::variable(ring, i));
    return Ideal(ring, std::move(g), opts);
  }

  /// Wraps a list already known to be a reduced Groebner basis.
  static Ideal fromReducedBasis(const FieldConfig& ring, std::vector<Polynomial> basis, GbOptions opts = {}) {
    Ideal I(ring, basis, opts);
    std::call_once(I.cache_->once, [&] {
      I.cache_->basis = std::move(basis);
      I.cache_->ready.store(true, std::memory_order_release);
    });
    return I;
  }

  const FieldConfig& ring() const noexcept { return ring_; }
  const GbOptions& options() const noexcept { return opts_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }

  const std::vector<Polynomial>& groebnerBasis() const {
    std::call_once(cache_->once, [&] {
      cache_->basis = reducedGroebnerBasis(gens_, opts_);
      cache_->ready.store(true, std::memory_order_release);
    });
    return cache_->basis;
  }
  bool hasGroebnerBasis() const { return cache_->ready.load(std::memory_order_acquire); }

  bool isZero() const noexcept { return gens_.empty(); }
  bool isUnit() const {
    const auto& G = groebnerBasis();
    return G.size() == 1 && G[0].isConstant();
  }

  /// Normal form modulo the reduced basis; zero exactly for members.
  Polynomial reduce(const Polynomial& f) const { return normalForm(f, groebnerBasis()); }
  bool contains(const Polynomial& f) const { return reduce(f).isZero(); }
  bool contains(const Ideal& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const Polynomial& g) { return contains(g); });
  }

  /// True when some generator does not vanish at the origin, i.e. the
  /// localization at the origin is the unit ideal.
  bool isUnitAtOrigin() const {
    return std::any_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.constantTerm() != 0; });
  }

  /// Canonical generator strings: the reduced basis in ascending deg-lex order.
  std::vector<std::string> canonicalStrings() const {
    std::vector<std::string> out;
    for (const auto& g : groebnerBasis()) out.push_back(g.str());
    return out;
  }

  std::string str() const {
    std::string s = "(";
    const auto& G = groebnerBasis();
    if (G.empty()) s += "0";
    for (std::size_t i = 0; i < G.size(); ++i) s += (i ? ", " : "") + G[i].str();
    return s + ")";
  }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    if (!(a.ring_ == b.ring_)) return false;
    return a.groebnerBasis() == b.groebnerBasis();
  }

 private:
  struct Cache {
    std::once_flag once;
    std::atomic<bool> ready{false};
    std::vector<Polynomial> basis;
  };

  FieldConfig ring_;
  GbOptions opts_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

inline bool idealEquals(const Ideal& a, const Ideal& b) { return a == b; }

namespace detail {
inline GbOptions mergeOptions(const Ideal& a, const Ideal& b) {
  return GbOptions{std::max(a.options().degreeCap, b.options().degreeCap)};
}
inline void checkSameRing(const Ideal& a, const Ideal& b) {
  if (!(a.ring() == b.ring())) throw DomainError("ideals from different rings");
}
}  // namespace detail

inline Ideal sum(const Ideal& a, const Ideal& b) {
  detail::checkSameRing(a, b);
  auto g = a.generators();
  g.insert(g.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(g), detail::mergeOptions(a, b));
}

/// Pairwise products of generators, linearly interreduced.
inline Ideal product(const Ideal& a, const Ideal& b) {
  detail::checkSameRing(a, b);
  std::vector<Polynomial> g;
  g.reserve(a.generators().size() * b.generators().size());
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) g.push_back(x * y);
  return Ideal(a.ring(), echelonize(g), detail::mergeOptions(a, b));
}

inline Ideal product(const Ideal& a, const Polynomial& f) {
  std::vector<Polynomial> g;
  g.reserve(a.generators().size());
  for (const auto& x : a.generators()) g.push_back(x * f);
  return Ideal(a.ring(), std::move(g), a.options());
}

/// J^n by binary exponentiation; power(J, 0) = (1).
inline Ideal power(const Ideal& J, std::uint64_t n) {
  Ideal result = Ideal::unit(J.ring(), J.options());
  Ideal base = J;
  while (n) {
    if (n & 1) result = product(result, base);
    n >>= 1;
    if (n) base = product(base, base);
  }
  return result;
}

/// J^[p^e], generated by the p^e-th powers of the generators. When J's reduced
/// basis is known, its Frobenius image is the reduced basis of J^[p^e].
inline Ideal bracketPower(const Ideal& J, unsigned e) {
  std::vector<Polynomial> g;
  g.reserve(J.generators().size());
  for (const auto& x : J.generators()) g.push_back(frobPower(x, e));
  if (!J.hasGroebnerBasis()) return Ideal(J.ring(), std::move(g), J.options());
  std::vector<Polynomial> basis;
  for (const auto& x : J.groebnerBasis()) basis.push_back(frobPower(x, e));
  return Ideal::fromReducedBasis(J.ring(), std::move(basis), J.options());
}

}  // namespace charp
