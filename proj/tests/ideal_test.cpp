#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <thread>

#include "charp/groebner.hpp"
#include "charp/ideal.hpp"
#include "charp/parse.hpp"
#include "oracles.hpp"

using namespace charp;

namespace {
Ideal I(const FieldConfig& R, const char* gens) { return Ideal(R, parsePolynomialList(gens, R)); }
Polynomial P(const char* s, const FieldConfig& R) { return parsePolynomial(s, R); }
}  // namespace

TEST(Reduce, Examples) {
  FieldConfig R(5, 2);
  EXPECT_TRUE(I(R, "x, y").reduce(P("y", R)).isZero());
  EXPECT_TRUE(I(R, "x^2+y, y").reduce(P("x^2", R)).isZero());
  EXPECT_EQ(I(R, "x, y").reduce(P("1", R)), P("1", R));
  EXPECT_EQ(I(R, "x^2").reduce(P("x^3+x*y+y", R)), P("x*y+y", R));
}

TEST(IdealEquals, Examples) {
  FieldConfig R(3, 2);
  EXPECT_TRUE(idealEquals(I(R, "x, y"), I(R, "y, x+y")));
  EXPECT_FALSE(idealEquals(I(R, "x"), I(R, "x^2")));
  EXPECT_TRUE(idealEquals(Ideal::zero(R), Ideal::zero(R)));
  EXPECT_TRUE(idealEquals(I(R, "0"), Ideal::zero(R)));
  EXPECT_FALSE(idealEquals(Ideal::zero(R), Ideal::unit(R)));
}

TEST(IdealOps, Examples) {
  FieldConfig R(7, 2);
  EXPECT_EQ(sum(I(R, "x"), I(R, "y")), I(R, "x, y"));
  EXPECT_EQ(product(I(R, "x, y"), I(R, "x, y")), I(R, "x^2, x*y, y^2"));
  EXPECT_EQ(power(I(R, "x, y"), 0), Ideal::unit(R));
  EXPECT_EQ(power(I(R, "x, y"), 3), I(R, "x^3, x^2*y, x*y^2, y^3"));
  EXPECT_EQ(product(I(R, "x, y"), P("x+1", R)), I(R, "x^2+x, x*y+y"));
  EXPECT_TRUE(power(Ideal::zero(R), 2).isZero() || power(Ideal::zero(R), 2) == Ideal::zero(R));
}

TEST(BracketPower, Examples) {
  FieldConfig R2(2, 2), R3(3, 2);
  EXPECT_EQ(bracketPower(I(R2, "x, y"), 1), I(R2, "x^2, y^2"));
  EXPECT_EQ(bracketPower(I(R3, "x+y"), 1), I(R3, "x^3+y^3"));
  EXPECT_EQ(bracketPower(Ideal::unit(R3), 2), Ideal::unit(R3));
}

TEST(GroebnerBasis, ReducedAndCanonical) {
  FieldConfig R(7, 2);
  Ideal J = I(R, "x^2+y, x*y-1");
  const auto& G = J.groebnerBasis();
  ASSERT_FALSE(G.empty());
  for (std::size_t i = 0; i < G.size(); ++i) {
    EXPECT_EQ(G[i].leadingCoeff(), 1u);
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      // No term of G[i] is divisible by the leading monomial of G[j].
      for (const auto& t : G[i].terms()) EXPECT_FALSE(G[j].leadingExponent().divides(t.exp));
    }
    if (i) EXPECT_TRUE(degLexCompare(G[i - 1].leadingExponent(), G[i].leadingExponent()) < 0);
  }
  EXPECT_EQ(J.str(), Ideal(R, G).str());
}

TEST(GroebnerBasis, DegreeCap) {
  FieldConfig R(7, 2);
  GbOptions tight{4};
  Ideal J(R, parsePolynomialList("x^3+y^2, x^2*y+x", R), tight);
  EXPECT_THROW(J.groebnerBasis(), DegreeCapExceeded);
}

TEST(Membership, AgreesWithCofactorSearch) {
  std::mt19937_64 rng(2024);
  int members = 0, others = 0;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    FieldConfig R(p, 2);
    for (int i = 0; i < 60; ++i) {
      std::vector<Polynomial> gens{oracle::randomInMaximal(rng, R, 3, 3), oracle::randomInMaximal(rng, R, 3, 3)};
      Ideal J(R, gens);
      // A combination with cofactors of degree <= 2, then a perturbed copy.
      Polynomial f = oracle::naiveMul(oracle::randomPoly(rng, R, 2, 3), gens[0]) +
                     oracle::naiveMul(oracle::randomPoly(rng, R, 2, 3), gens[1]);
      Polynomial g = f + oracle::randomPoly(rng, R, 3, 2);
      for (const auto& h : {f, g}) {
        bool oracleSays = oracle::inTruncatedSpan(h, gens, 3 + 4);
        ASSERT_EQ(J.contains(h), oracleSays) << "J = " << J.str() << " h = " << h.str();
        (oracleSays ? members : others)++;
      }
    }
  }
  EXPECT_GT(members, 100);
  EXPECT_GT(others, 20);
}

TEST(Equivalence, ShufflesAndUnitScaling) {
  std::mt19937_64 rng(31);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    FieldConfig R(p, 3);
    for (int i = 0; i < 25; ++i) {
      std::vector<Polynomial> gens;
      for (int k = 0; k < 3; ++k) gens.push_back(oracle::randomInMaximal(rng, R, 3, 3));
      Ideal J(R, gens);
      auto shuffled = gens;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (auto& g : shuffled) g = g.scaled(std::uniform_int_distribution<std::uint32_t>(1, p - 1)(rng));
      Ideal K(R, shuffled);
      ASSERT_EQ(J, K);
      ASSERT_EQ(J, J);
      // Adding a redundant member does not change the ideal.
      auto extra = gens;
      extra.push_back(oracle::naiveMul(gens[0], gens[1]) + gens[2]);
      Ideal L(R, extra);
      ASSERT_EQ(L, K);
      ASSERT_TRUE(J.contains(L) && L.contains(J));
    }
  }
}

TEST(BracketPower, DistributesOverSums) {
  std::mt19937_64 rng(41);
  for (std::uint32_t p : {2u, 3u}) {
    FieldConfig R(p, 2);
    for (int i = 0; i < 25; ++i) {
      Ideal J(R, {oracle::randomInMaximal(rng, R, 3, 2)});
      Ideal K(R, {oracle::randomInMaximal(rng, R, 3, 2), oracle::randomInMaximal(rng, R, 2, 2)});
      for (unsigned e = 1; e <= 2; ++e) ASSERT_EQ(bracketPower(sum(J, K), e), sum(bracketPower(J, e), bracketPower(K, e)));
    }
  }
}

TEST(BracketPower, BasisImageIsReducedBasis) {
  std::mt19937_64 rng(43);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    FieldConfig R(p, 2);
    for (int i = 0; i < 25; ++i) {
      Ideal J(R, {oracle::randomInMaximal(rng, R, 3, 3), oracle::randomInMaximal(rng, R, 3, 3)});
      J.groebnerBasis();
      Ideal fast = bracketPower(J, 1);
      ASSERT_TRUE(fast.hasGroebnerBasis());
      Ideal fresh(R, fast.generators());
      ASSERT_EQ(fast.groebnerBasis(), reducedGroebnerBasis(fresh.generators())) << J.str();
    }
  }
}

TEST(Ideal, SharedAcrossThreads) {
  FieldConfig R(7, 3);
  Ideal J = I(R, "x^2+y*z, y^2-x, z^3+x*y");
  std::vector<std::string> seen(8);
  std::vector<std::thread> ts;
  for (int t = 0; t < 8; ++t) ts.emplace_back([&, t] { seen[t] = J.str(); });
  for (auto& t : ts) t.join();
  for (const auto& s : seen) EXPECT_EQ(s, seen[0]);
}

TEST(Ideal, UnitAtOrigin) {
  FieldConfig R(5, 2);
  EXPECT_TRUE(I(R, "x, y+1").isUnitAtOrigin());
  EXPECT_FALSE(I(R, "x, y").isUnitAtOrigin());
  EXPECT_TRUE(I(R, "x+1").isUnitAtOrigin());
  EXPECT_FALSE(I(R, "x+1").isUnit());
}
