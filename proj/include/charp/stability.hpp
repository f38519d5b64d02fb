#pragma once

// Measured stability of test ideals under small perturbations at the origin.
// The radius δ below which every perturbation leaves τ unchanged exists but is
// not effective; we report a verified lower bound over a finite probe family.

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "charp/arith.hpp"
#include "charp/divisor.hpp"
#include "charp/ideal.hpp"
#include "charp/poly.hpp"
#include "charp/test_ideal.hpp"

namespace charp {

/// mult_0(E) = Σ t_i · ord_0(f_i). On a regular ambient the multiplicity of a
/// hypersurface equals the order of its equation.
inline Ratio multAtOrigin(const DivisorSpec& E) {
  Ratio m(0);
  for (const auto& c : E.parts()) {
    auto ord = ordAtOrigin(c.f);
    if (!ord) throw DomainError("multiplicity of div(0) is infinite");
    m += c.t * Ratio(static_cast<long long>(*ord));
  }
  return m;
}

struct PerturbationCheck {
  Ideal base;
  Ideal perturbed;
  bool equal = false;
  /// Equal after localizing at the origin. Besides global equality this only
  /// recognizes the case where both ideals are the unit ideal there.
  bool localEqual = false;
};

inline PerturbationCheck comparePerturbation(const DivisorSpec& delta, const DivisorSpec& E,
                                             const TestIdealOptions& opts = {}) {
  PerturbationCheck c;
  c.base = stableTestIdeal(delta, opts);
  c.perturbed = stableTestIdeal(delta + E, opts);
  c.equal = c.base == c.perturbed;
  c.localEqual = c.equal || (c.base.isUnitAtOrigin() && c.perturbed.isUnitAtOrigin());
  return c;
}

/// τ(Δ + E) == τ(Δ). Throws Inconclusive if either chain is capped.
inline bool checkPerturbation(const DivisorSpec& delta, const DivisorSpec& E, const TestIdealOptions& opts = {}) {
  return comparePerturbation(delta, E, opts).equal;
}

struct SmallestJump {
  bool found = false;
  /// The least grid value with a strictly smaller ideal; the upper end of the
  /// scanned range when nothing was found (an open lower bound).
  Ratio value;
  /// Largest grid value still equal to τ(Δ); the jump lies in (bracketLo, value].
  Ratio bracketLo;
  Ideal base;
  Ideal after;
};

/// Least s (denominator <= maxDen, 0 < s <= hi) with τ(Δ + s·div(g)) ⊊ τ(Δ),
/// found by bisection over the ascending grid. For g in the maximal ideal a
/// jump always occurs by s = 1, which is the default range.
inline SmallestJump smallestJumpingNumber(const DivisorSpec& delta, const Polynomial& g, std::uint64_t maxDen,
                                          const TestIdealOptions& opts = {}, const Ratio& hi = Ratio(1)) {
  if (g.isZero() || g.constantTerm() != 0) throw DomainError("jumping numbers need g in the maximal ideal, g != 0");
  SmallestJump res;
  res.base = stableTestIdeal(delta, opts);
  auto grid = detail::fareyGrid(Ratio(0), hi, maxDen);
  auto dropsAt = [&](const Ratio& s, Ideal* out) {
    Ideal tau = stableTestIdeal(delta + DivisorSpec::single(g, s), opts);
    bool drop = !(tau == res.base);
    if (out) *out = tau;
    return drop;
  };
  std::size_t lo = 0, hiIdx = grid.size();  // first drop lies in [lo, hiIdx)
  while (lo < hiIdx) {
    std::size_t mid = lo + (hiIdx - lo) / 2;
    if (dropsAt(grid[mid], nullptr))
      hiIdx = mid;
    else
      lo = mid + 1;
  }
  if (lo == grid.size()) {
    res.value = hi;
    res.bracketLo = grid.empty() ? Ratio(0) : grid.back();
    res.after = res.base;
    return res;
  }
  res.found = true;
  res.value = grid[lo];
  res.bracketLo = lo == 0 ? Ratio(0) : grid[lo - 1];
  dropsAt(res.value, &res.after);
  return res;
}

struct StabilityWitness {
  Polynomial probe;
  unsigned n = 0;
  DivisorSpec perturbation;  // div(probe) / p^n
  std::uint64_t ord = 0;
  Ratio tOrd;  // mult_0 of the perturbation
  bool equal = false;
  bool localEqual = false;
};

struct ProbeTail {
  Polynomial probe;
  std::uint64_t ord = 0;
  /// Smallest tested N with equality for every tested n >= N; empty when the
  /// largest tested n still changes the ideal.
  std::optional<unsigned> tailStart;
};

struct StabilityReport {
  Ideal baseTau;
  /// Minimum multiplicity at an observed change, or the largest tested safe
  /// multiplicity when no change was seen.
  Ratio deltaLower;
  bool jumpObserved = false;
  std::vector<StabilityWitness> witnesses;
  std::optional<StabilityWitness> firstJump;
  std::vector<ProbeTail> tails;
};

struct StabilityOptions {
  TestIdealOptions chain{};
  /// First perturbation level; 0 includes the full divisor div(r).
  unsigned nMin = 1;
  unsigned threads = 1;
};

/// Probe family of increasing order: x_1, x_1 + x_2, x_1^2 and a dense cubic.
inline std::vector<Polynomial> defaultProbes(const FieldConfig& R) {
  std::vector<Polynomial> out;
  Polynomial x1 = Polynomial::variable(R, 0);
  out.push_back(x1);
  if (R.d >= 2) out.push_back(x1 + Polynomial::variable(R, 1));
  out.push_back(x1 * x1);
  // Every cubic monomial, coefficients 1, 2, 3, ... with multiples of p skipped.
  std::vector<Term> cubic;
  std::uint32_t c = 0;
  for (auto& m : monomialsOfDegree(R.d, 3)) {
    if (++c % R.p == 0) ++c;
    cubic.push_back({std::move(m), c % R.p});
  }
  out.push_back(Polynomial::fromTerms(R, std::move(cubic)));
  return out;
}

inline StabilityReport stabilityScan(const DivisorSpec& delta, const std::vector<Polynomial>& probes, unsigned nMax,
                                     const StabilityOptions& opts = {}) {
  if (probes.empty()) throw DomainError("stability scan needs at least one probe");
  if (nMax < opts.nMin) throw DomainError("stability scan needs nMax >= nMin");
  for (const auto& r : probes)
    if (r.isZero() || r.constantTerm() != 0) throw DomainError("probes must be nonzero and vanish at the origin");
  const FieldConfig& R = delta.ring();
  StabilityReport rep;
  rep.baseTau = stableTestIdeal(delta, opts.chain);

  std::vector<StabilityWitness> ws;
  for (const auto& r : probes)
    for (unsigned n = opts.nMin; n <= nMax; ++n) {
      StabilityWitness w;
      w.probe = r;
      w.n = n;
      w.perturbation = DivisorSpec::single(r, Ratio(BigInt(1), bigPow(R.p, n)));
      w.ord = *ordAtOrigin(r);
      w.tOrd = multAtOrigin(w.perturbation);
      ws.push_back(std::move(w));
    }

  auto evalOne = [&](StabilityWitness& w) {
    Ideal tau = stableTestIdeal(delta + w.perturbation, opts.chain);
    w.equal = tau == rep.baseTau;
    w.localEqual = w.equal || (tau.isUnitAtOrigin() && rep.baseTau.isUnitAtOrigin());
  };
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    for (auto& w : ws) evalOne(w);
  } else {
    rep.baseTau.groebnerBasis();
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t)
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < ws.size(); i += threads) evalOne(ws[i]);
      }));
    for (auto& j : jobs) j.get();
  }

  std::size_t k = 0;
  for (const auto& r : probes) {
    ProbeTail tail{r, *ordAtOrigin(r), std::nullopt};
    for (unsigned n = nMax + 1; n-- > opts.nMin;) {
      if (!ws[k + (n - opts.nMin)].equal) break;
      tail.tailStart = n;
    }
    rep.tails.push_back(std::move(tail));
    k += nMax + 1 - opts.nMin;
  }

  Ratio safeMax(0);
  for (const auto& w : ws) {
    if (w.equal) {
      safeMax = std::max(safeMax, w.tOrd);
    } else if (!rep.firstJump || w.tOrd < rep.firstJump->tOrd) {
      rep.firstJump = w;
    }
  }
  rep.jumpObserved = rep.firstJump.has_value();
  rep.deltaLower = rep.jumpObserved ? rep.firstJump->tOrd : safeMax;
  rep.witnesses = std::move(ws);
  return rep;
}

/// Whether t ↦ τ(a^t) drops below the unit ideal at the origin for some
/// finite t. It suffices to look at t = d: if a ⊆ m then τ(a^d) ⊆ τ(m^d) = m.
inline bool jumpsAtOrigin(const Ideal& a, const TestIdealOptions& opts = {}) {
  if (a.isZero()) return true;
  auto rep = testIdeal(DivisorSpec(a.ring()), a, Ratio(static_cast<long long>(a.ring().d)), opts);
  if (rep.capped) throw Inconclusive("test ideal chain for a^d did not stabilize");
  return !rep.ideal.isUnitAtOrigin();
}

}  // namespace charp
