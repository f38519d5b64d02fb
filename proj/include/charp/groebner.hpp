#pragma once

// Buchberger's algorithm for the deg-lex order with the coprime and chain
// criteria and a normal (lowest degree first) S-pair selection.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "charp/error.hpp"
#include "charp/poly.hpp"

namespace charp {

struct GbOptions {
  /// S-pairs whose lcm has a larger total degree abort the computation.
  std::uint64_t degreeCap = 64;
};

/// Fully reduced normal form of f with respect to `basis` (any generating
/// list; the result is canonical only when `basis` is a Groebner basis).
inline Polynomial normalForm(const Polynomial& f, std::span<const Polynomial> basis) {
  const FieldConfig& R = f.ring();
  std::vector<Term> rem;
  Polynomial h = f;
  while (!h.isZero()) {
    const Term& lt = h.leadingTerm();
    const Polynomial* div = nullptr;
    for (const auto& g : basis)
      if (!g.isZero() && g.leadingExponent().divides(lt.exp)) {
        div = &g;
        break;
      }
    if (div) {
      std::uint32_t c = R.mul(lt.coeff, R.inv(div->leadingCoeff()));
      h = h.subMulTerm(c, lt.exp - div->leadingExponent(), *div);
    } else {
      rem.push_back(lt);
      std::vector<Term> rest(h.terms().begin() + 1, h.terms().end());
      h = Polynomial::fromSortedTerms(R, std::move(rest));
    }
  }
  return Polynomial::fromSortedTerms(R, std::move(rem));
}

/// A monic basis of the F_p-linear span of `polys` with pairwise distinct
/// leading monomials. Zero inputs are dropped.
inline std::vector<Polynomial> echelonize(std::span<const Polynomial> polys) {
  std::map<Exponent, Polynomial, DegLexGreater> pivots;
  for (const auto& f : polys) {
    Polynomial g = f;
    while (!g.isZero()) {
      auto it = pivots.find(g.leadingExponent());
      if (it == pivots.end()) {
        Polynomial m = g.monic();
        Exponent key = m.leadingExponent();
        pivots.emplace(std::move(key), std::move(m));
        break;
      }
      g = g.subMulTerm(g.leadingCoeff(), Exponent(g.ring().d), it->second);
    }
  }
  std::vector<Polynomial> out;
  out.reserve(pivots.size());
  for (auto& [e, g] : pivots) out.push_back(std::move(g));
  return out;
}

namespace detail {

inline Polynomial sPolynomial(const Polynomial& f, const Polynomial& g) {
  Exponent l = Exponent::lcm(f.leadingExponent(), g.leadingExponent());
  const FieldConfig& R = f.ring();
  Polynomial a = f.mulTerm(l - f.leadingExponent(), R.inv(f.leadingCoeff()));
  Polynomial b = g.mulTerm(l - g.leadingExponent(), R.inv(g.leadingCoeff()));
  return a - b;
}

}  // namespace detail

/// The reduced Groebner basis of the ideal generated by `gens`, monic and
/// sorted by ascending leading monomial. Empty for the zero ideal.
inline std::vector<Polynomial> reducedGroebnerBasis(std::span<const Polynomial> gens, const GbOptions& opts = {}) {
  std::vector<Polynomial> G = echelonize(gens);
  if (G.empty()) return G;
  for (const auto& g : G)
    if (g.leadingExponent().isZero()) return {Polynomial::constant(g.ring(), 1)};

  // Queue keyed by (lcm degree, j, i); `pending` mirrors it for the chain test.
  std::set<std::tuple<std::uint64_t, std::size_t, std::size_t>> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto addPairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      auto deg = Exponent::lcm(G[i].leadingExponent(), G[k].leadingExponent()).degree();
      queue.emplace(deg, k, i);
      pending.emplace(i, k);
    }
  };
  for (std::size_t k = 1; k < G.size(); ++k) addPairs(k);

  auto isPending = [&](std::size_t a, std::size_t b) {
    return pending.count(a < b ? std::pair{a, b} : std::pair{b, a}) > 0;
  };

  while (!queue.empty()) {
    auto [deg, j, i] = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({i, j});

    const Exponent& li = G[i].leadingExponent();
    const Exponent& lj = G[j].leadingExponent();
    if (Exponent::coprime(li, lj)) continue;
    Exponent l = Exponent::lcm(li, lj);
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (G[k].leadingExponent().divides(l) && !isPending(i, k) && !isPending(j, k)) chain = true;
    }
    if (chain) continue;
    if (deg > opts.degreeCap) throw DegreeCapExceeded(deg, opts.degreeCap);

    Polynomial r = normalForm(detail::sPolynomial(G[i], G[j]), G);
    if (r.isZero()) continue;
    if (r.leadingExponent().isZero()) return {Polynomial::constant(r.ring(), 1)};
    G.push_back(r.monic());
    addPairs(G.size() - 1);
  }

  // Minimize, then reduce tails.
  std::sort(G.begin(), G.end(), [](const Polynomial& a, const Polynomial& b) {
    return degLexCompare(a.leadingExponent(), b.leadingExponent()) < 0;
  });
  std::vector<Polynomial> minimal;
  for (auto& g : G) {
    bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const Polynomial& m) {
      return m.leadingExponent().divides(g.leadingExponent());
    });
    if (!redundant) minimal.push_back(std::move(g));
  }
  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Polynomial> others;
    others.reserve(minimal.size() - 1);
    for (std::size_t m = 0; m < minimal.size(); ++m)
      if (m != k) others.push_back(minimal[m]);
    reduced.push_back(normalForm(minimal[k], others).monic());
  }
  return reduced;
}

}  // namespace charp
