// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Limits and sample sizes are fixed below.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "charp/charp.hpp"
#include "oracles.hpp"

using namespace charp;

namespace {

constexpr double kDecomposeBudgetSec = 5.0;
constexpr double kCuspBudgetSec = 30.0;
constexpr int kDecomposeCases = 500;
constexpr int kTraceCases = 200;
constexpr int kRootCases = 200;
constexpr int kTwistCases = 50;
constexpr int kPrincipalCases = 50;
constexpr unsigned kTailBound = 3;  // N(r) <= 3
constexpr unsigned kTailScanMax = 5;
constexpr std::uint64_t kCuspMaxDen = 42;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Polynomial P(const char* s, const FieldConfig& R) { return parsePolynomial(s, R); }

template <class T>
T pick(std::mt19937_64& rng, std::initializer_list<T> xs) {
  auto it = xs.begin();
  std::advance(it, std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng));
  return *it;
}

// 1. f = Σ f_λ^(p^e) x^λ on random inputs, within the time budget.
Outcome decompositionRoundTrip() {
  std::mt19937_64 rng(1001);
  auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (int i = 0; i < kDecomposeCases; ++i) {
    FieldConfig R(pick(rng, {2u, 3u, 5u, 7u}), pick(rng, {1u, 2u, 3u}));
    unsigned e = pick(rng, {1u, 2u});
    Polynomial f = oracle::randomPoly(rng, R, 10, 12);
    auto dec = decompose(f, e);
    ExponentBox box(R, e);
    Polynomial back(R);
    for (const auto& [lambda, part] : dec.parts) {
      if (!box.contains(lambda)) ++bad;
      back = back + mulPow(part, box.q()).mulTerm(lambda, 1);
    }
    if (!(back == f)) ++bad;
  }
  double s = secondsSince(t0);
  std::ostringstream os;
  os << kDecomposeCases << " cases, " << bad << " mismatches, " << s << " s (limit " << kDecomposeBudgetSec << " s)";
  return {bad == 0 && s < kDecomposeBudgetSec, os.str()};
}

// 2. Trace semilinearity and composition.
Outcome traceLaws() {
  std::mt19937_64 rng(1002);
  int bad = 0;
  for (int i = 0; i < kTraceCases; ++i) {
    FieldConfig R(pick(rng, {2u, 3u, 5u, 7u}), pick(rng, {1u, 2u, 3u}));
    unsigned e = pick(rng, {1u, 2u});
    Polynomial f = oracle::randomPoly(rng, R, 12, 10), g = oracle::randomPoly(rng, R, 3, 4);
    if (!(trace(frobPower(g, e) * f, e) == g * trace(f, e))) ++bad;
  }
  for (int i = 0; i < kTraceCases; ++i) {
    FieldConfig R(pick(rng, {2u, 3u}), pick(rng, {1u, 2u, 3u}));
    unsigned e = pick(rng, {1u, 2u}), e2 = pick(rng, {1u, 2u});
    Polynomial f = oracle::randomPoly(rng, R, 40, 16);
    if (!(trace(trace(f, e), e2) == trace(f, e + e2))) ++bad;
  }
  std::ostringstream os;
  os << kTraceCases << " + " << kTraceCases << " cases, " << bad << " mismatches";
  return {bad == 0, os.str()};
}

// 3. Root-ideal containment, inversion, monotonicity, skew rule.
Outcome rootIdealAxioms() {
  std::mt19937_64 rng(1003);
  int bad = 0;
  for (int i = 0; i < kRootCases; ++i) {
    FieldConfig R(pick(rng, {2u, 3u, 5u}), pick(rng, {1u, 2u}));
    unsigned e = pick(rng, {1u, 2u});
    Ideal J(R, {oracle::randomInMaximal(rng, R, 8, 4), oracle::randomInMaximal(rng, R, 8, 4)});
    Ideal K = sum(J, Ideal(R, {oracle::randomPoly(rng, R, 6, 3)}));
    Polynomial g = oracle::randomPoly(rng, R, 8, 5), h = oracle::randomPoly(rng, R, 3, 3);
    Ideal root = rootIdeal(J, e);
    bool ok = bracketPower(root, e).contains(J);
    ok = ok && rootIdeal(bracketPower(J, e), e) == J;
    ok = ok && rootIdeal(K, e).contains(root);
    ok = ok && rootIdeal(Ideal(R, {frobPower(h, e) * g}), e) == product(rootIdeal(Ideal(R, {g}), e), h);
    if (!ok) ++bad;
  }
  std::ostringstream os;
  os << kRootCases << " cases, " << bad << " failures";
  return {bad == 0, os.str()};
}

DivisorSpec randomDivisor(std::mt19937_64& rng, const FieldConfig& R) {
  DivisorSpec D(R);
  int parts = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int k = 0; k < parts; ++k) {
    Polynomial f = oracle::randomInMaximal(rng, R, 3, 2);
    long long b = std::uniform_int_distribution<long long>(1, 6)(rng);
    long long a = std::uniform_int_distribution<long long>(0, 2 * b)(rng);
    D.add(f, Ratio(BigInt(a), BigInt(b)));
  }
  return D;
}

// 4. τ(Δ + div f) = f · τ(Δ).
Outcome cartierTwist() {
  std::mt19937_64 rng(1004);
  int bad = 0, capped = 0;
  for (int i = 0; i < kTwistCases; ++i) {
    FieldConfig R(pick(rng, {2u, 3u, 5u}), 2);
    DivisorSpec D = randomDivisor(rng, R);
    Polynomial f = oracle::randomInMaximal(rng, R, 3, 3);
    auto base = testIdeal(D), twisted = testIdeal(D + DivisorSpec::single(f, Ratio(1)));
    if (base.capped || twisted.capped) {
      ++capped;
      continue;
    }
    if (!(twisted.ideal == product(base.ideal, f))) ++bad;
  }
  std::ostringstream os;
  os << kTwistCases << " cases, " << bad << " mismatches, " << capped << " capped";
  return {bad == 0 && capped == 0, os.str()};
}

// 5. τ(div(r)/p^e) against the naive chain I_n(r^(p^(n-e))), n = e..e+2.
Outcome principalRoot() {
  std::mt19937_64 rng(1005);
  int bad = 0;
  for (int i = 0; i < kPrincipalCases; ++i) {
    FieldConfig R(pick(rng, {2u, 3u}), 2);
    unsigned e = pick(rng, {1u, 2u});
    Polynomial r = oracle::randomInMaximal(rng, R, 6, 4);
    auto rep = testIdeal(DivisorSpec::single(r, Ratio(BigInt(1), bigPow(R.p, e))));
    Ideal expected = rootIdeal(Ideal(R, {r}), e);
    bool ok = !rep.capped && rep.ideal == expected;
    for (unsigned n = e; n <= e + 2 && ok; ++n) {
      Polynomial pw = oracle::naivePow(r, bigPow(R.p, n - e).convert_to<std::uint64_t>());
      ok = rootIdeal(Ideal(R, {pw}), n) == expected;
    }
    if (!ok) ++bad;
  }
  std::ostringstream os;
  os << kPrincipalCases << " cases, " << bad << " mismatches";
  return {bad == 0, os.str()};
}

// 6. Cusp x^2 + y^3 over F_7.
JumpScanResult cuspScan;

Outcome cuspGolden() {
  auto t0 = std::chrono::steady_clock::now();
  FieldConfig R(7, 2);
  Polynomial f = P("x^2+y^3", R);
  std::ostringstream os;
  bool ok = true;
  auto nu1 = nu(f, 1), nu1Oracle = oracle::naiveNu(f, 1);
  ok = ok && nu1 == 5 && nu1Oracle == 5;
  auto b1 = fptBracket(f, 1), b2 = fptBracket(f, 2);
  auto nu2Oracle = oracle::naiveNu(f, 2);
  ok = ok && b1.lo == Ratio::parse("5/7") && b1.hi == Ratio::parse("6/7");
  ok = ok && b2.nu == nu2Oracle && b2.lo < Ratio::parse("5/6") && Ratio::parse("5/6") <= b2.hi;
  ok = ok && b1.lo <= b2.lo && b2.hi <= b1.hi;
  auto sj = smallestJumpingNumber(DivisorSpec(R), f, kCuspMaxDen);
  ok = ok && sj.found && sj.value == Ratio::parse("5/6");
  cuspScan = jumpScan(DivisorSpec(R), f, Ratio(0), Ratio(1), kCuspMaxDen);
  ok = ok && !cuspScan.jumps.empty() && cuspScan.jumps.front() == Ratio::parse("5/6");
  double s = secondsSince(t0);
  os << "nu1=" << nu1 << " (oracle " << nu1Oracle << "), e=1 bracket (" << b1.lo << ", " << b1.hi << "], e=2 bracket ("
     << b2.lo << ", " << b2.hi << "] nu2=" << b2.nu << " (oracle " << nu2Oracle << "), smallest jump "
     << (sj.found ? sj.value.str() : "none") << " at maxDen " << kCuspMaxDen << ", " << s << " s (limit "
     << kCuspBudgetSec << " s)";
  return {ok && s < kCuspBudgetSec, os.str()};
}

// 7. Equal tails of τ(Δ + div(r)/p^n) from N(r) <= 3 on.
Outcome tailProperty() {
  FieldConfig R(7, 2);
  std::vector<Polynomial> probes = defaultProbes(R);
  for (const char* s : {"y", "x+y^2", "x*y", "y^2+x^3", "x^2*y+y^3", "x^3+y^3+x*y^2"}) probes.push_back(P(s, R));
  int failures = 0;
  unsigned worst = 0;
  std::size_t witnesses = 0;
  for (const char* base : {"0", "1/2*div(x)", "5/6*div(x^2+y^3)"}) {
    auto rep = stabilityScan(DivisorSpec::parse(base, R), probes, kTailScanMax);
    witnesses += rep.witnesses.size();
    for (const auto& tail : rep.tails) {
      if (tail.ord < 1 || tail.ord > 3) ++failures;
      if (!tail.tailStart || *tail.tailStart > kTailBound) {
        ++failures;
        continue;
      }
      worst = std::max(worst, *tail.tailStart);
    }
    // Direct re-check of the tail through checkPerturbation.
    for (const auto& w : rep.witnesses)
      if (w.n >= kTailBound && (!w.equal || !checkPerturbation(DivisorSpec::parse(base, R), w.perturbation))) ++failures;
  }
  std::ostringstream os;
  os << "3 bases x " << probes.size() << " probes, n <= " << kTailScanMax << ", " << witnesses
     << " witnesses, max N(r) = " << worst << " (limit " << kTailBound << "), " << failures << " failures";
  return {failures == 0, os.str()};
}

// 8. Right-continuity and monotonicity at each jump of the criterion 6 scan.
Outcome rightContinuity() {
  FieldConfig R(7, 2);
  Polynomial f = P("x^2+y^3", R);
  int failures = 0;
  if (cuspScan.jumps.empty()) return {false, "no jumps from criterion 6"};
  std::vector<Ratio> eps{Ratio(BigInt(1), BigInt(343)), Ratio(BigInt(1), BigInt(1000)), Ratio(BigInt(1), BigInt(2401))};
  for (std::size_t k = 0; k < cuspScan.jumps.size(); ++k) {
    Ratio c = cuspScan.jumps[k];
    Ideal at = stableTestIdeal(DivisorSpec::single(f, c));
    if (!(at == cuspScan.ideals[k])) ++failures;
    for (const auto& e : eps) {
      Ideal right = stableTestIdeal(DivisorSpec::single(f, c + e));
      Ideal left = stableTestIdeal(DivisorSpec::single(f, c - e));
      if (!(right == at)) ++failures;
      if (!left.contains(at) || left == at) ++failures;
      if (!at.contains(right)) ++failures;
    }
  }
  std::ostringstream os;
  os << cuspScan.jumps.size() << " jumps (";
  for (std::size_t k = 0; k < cuspScan.jumps.size(); ++k) os << (k ? ", " : "") << cuspScan.jumps[k];
  os << "), 3 offsets each, " << failures << " failures";
  return {failures == 0, os.str()};
}

// 9. Two CLI runs per criterion give byte-identical result fields.
std::string runCli(const std::string& args) {
  std::string cmd = std::string(CHARP_CLI_PATH) + " " + args + " --json 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "";
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  if (pclose(pipe) != 0) return "";
  try {
    return nlohmann::json::parse(out).at("result").dump();
  } catch (const std::exception&) {
    return "";
  }
}

Outcome cliDeterminism() {
  const std::vector<std::string> cmds{
      "decompose -p 2 -d 2 -e 1 'x^3+x*y^2'",
      "decompose -p 7 -d 3 -e 2 'x^60*y^3+3*z^50+x*y*z+2'",
      "trace -p 3 -d 2 -e 2 'x^8*y^17+x^26*y^8+x*y'",
      "root -p 2 -d 2 'x^3+x*y^2' 'x^2*y^2'",
      "testideal -p 3 -d 2 --div '1/2*div(x^2+y^3); 1*div(x+y)'",
      "testideal -p 5 -d 2 --div '1/25*div(x^7+y^4+x*y^3)'",
      "fpt -p 7 -d 2 -e 1 'x^2+y^3'",
      "fpt -p 7 -d 2 -e 2 'x^2+y^3'",
      "jumps -p 7 -d 2 'x^2+y^3' --max-den 42 --smallest",
      "scan -p 7 -d 2 --base '5/6*div(x^2+y^3)' --nmax 4",
      "jumps -p 7 -d 2 'x^2+y^3' --max-den 42",
  };
  int bad = 0;
  for (const auto& c : cmds) {
    std::string a = runCli(c), b = runCli(c);
    if (a.empty() || a != b) {
      ++bad;
      std::cerr << "  nondeterministic or failed: " << c << "\n";
    }
  }
  std::ostringstream os;
  os << cmds.size() << " commands run twice, " << bad << " differences";
  return {bad == 0, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"decomposition round trip", decompositionRoundTrip},
      {"trace semilinearity and composition", traceLaws},
      {"root ideal axioms", rootIdealAxioms},
      {"divisor twist of test ideals", cartierTwist},
      {"test ideal of div(r)/p^e equals the root ideal", principalRoot},
      {"cusp golden values over F_7", cuspGolden},
      {"equal tail under div(r)/p^n perturbations", tailProperty},
      {"right-continuity and monotonicity at jumps", rightContinuity},
      {"CLI result determinism", cliDeterminism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (o.pass ? "PASS" : "FAIL") << " ("
              << o.detail << ")" << std::endl;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all criteria passed")
            << std::endl;
  return failed ? 1 : 0;
}
