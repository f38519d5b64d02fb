#pragma once

// Frobenius decomposition over the monomial basis {x^λ : λ ∈ I_e}:
//   f = Σ_λ f_λ^(p^e) x^λ,
// the trace map as the projection onto the x^(μ_e) summand, and p^e-th root
// ideals I_e(J), the smallest I with J ⊆ I^[p^e].

#include <map>
#include <utility>
#include <vector>

#include "charp/groebner.hpp"
#include "charp/ideal.hpp"
#include "charp/poly.hpp"

namespace charp {

struct FrobeniusDecomposition {
  FieldConfig ring;
  unsigned e = 1;
  /// Only nonzero parts are stored; keys lie in I_e.
  std::map<Exponent, Polynomial, DegLexLess> parts;

  Polynomial part(const Exponent& lambda) const {
    auto it = parts.find(lambda);
    return it == parts.end() ? Polynomial(ring) : it->second;
  }

  /// Σ_λ frobPower(f_λ, e) · x^λ.
  Polynomial reconstruct() const {
    Polynomial f(ring);
    for (const auto& [lambda, g] : parts) f += frobPower(g, e).mulTerm(lambda, 1);
    return f;
  }
};

/// The unique p^e-th root of a coefficient. In the prime field c^p = c, so
/// the root is c itself; an extension field would need c^(p^(me - e)).
inline std::uint32_t coefficientRoot(std::uint32_t c, unsigned /*e*/) noexcept { return c; }

inline FrobeniusDecomposition decompose(const Polynomial& f, unsigned e) {
  ExponentBox box(f.ring(), e);
  const std::uint32_t q = box.q();
  const std::size_t d = f.ring().d;
  std::map<Exponent, std::vector<Term>, DegLexLess> buckets;
  for (const auto& t : f.terms()) {
    Exponent alpha(d), beta(d);
    for (std::size_t i = 0; i < d; ++i) {
      alpha.set(i, t.exp[i] / q);
      beta.set(i, t.exp[i] % q);
    }
    // For fixed β, η = qα + β orders exactly as α does, so each bucket stays sorted.
    buckets[std::move(beta)].push_back({std::move(alpha), coefficientRoot(t.coeff, e)});
  }
  FrobeniusDecomposition dec{f.ring(), e, {}};
  for (auto& [beta, terms] : buckets)
    dec.parts.emplace(beta, Polynomial::fromSortedTerms(f.ring(), std::move(terms)));
  return dec;
}

/// Tr_{F^e}(f): the coefficient of x^(μ_e) in the Frobenius decomposition.
inline Polynomial trace(const Polynomial& f, unsigned e) {
  ExponentBox box(f.ring(), e);
  const std::uint32_t q = box.q();
  const std::size_t d = f.ring().d;
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    bool hit = true;
    for (std::size_t i = 0; i < d && hit; ++i) hit = (t.exp[i] % q == q - 1);
    if (!hit) continue;
    Exponent alpha(d);
    for (std::size_t i = 0; i < d; ++i) alpha.set(i, t.exp[i] / q);
    out.push_back({std::move(alpha), coefficientRoot(t.coeff, e)});
  }
  return Polynomial::fromSortedTerms(f.ring(), std::move(out));
}

/// Generators of I_e(J): every decomposition part of every generator of J.
inline std::vector<Polynomial> rootGenerators(std::span<const Polynomial> gens, unsigned e) {
  std::vector<Polynomial> parts;
  for (const auto& g : gens)
    for (auto& [lambda, part] : decompose(g, e).parts) parts.push_back(std::move(part));
  return echelonize(parts);
}

/// I_e(J), the smallest ideal I with J ⊆ I^[p^e].
inline Ideal rootIdeal(const Ideal& J, unsigned e) {
  return Ideal(J.ring(), rootGenerators(J.generators(), e), J.options());
}

}  // namespace charp
