#pragma once

// Command line front end. dispatch() is kept separate from main() so that the
// test suites can drive it with in-memory streams.
//
// Exit codes: 0 success, 1 domain error, 2 usage error. With --json a single
// certificate {command, inputs, result, meta} is written to stdout; "result"
// holds only reproducible data, timings live under "meta".

#include <algorithm>
#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "charp/arith.hpp"
#include "charp/divisor.hpp"
#include "charp/error.hpp"
#include "charp/frobenius.hpp"
#include "charp/ideal.hpp"
#include "charp/parse.hpp"
#include "charp/poly.hpp"
#include "charp/stability.hpp"
#include "charp/test_ideal.hpp"

namespace charp::cli {

using nlohmann::json;

struct RunConfig {
  std::uint32_t p = 0;
  std::uint32_t d = 2;
  unsigned eMax = 0;
  std::uint64_t maxDen = 12;
  bool json = false;
  std::uint64_t degreeCap = 64;
  unsigned confirmWindow = 2;

  FieldConfig ring() const { return FieldConfig(p, d); }
  GbOptions gb() const { return GbOptions{degreeCap}; }
  TestIdealOptions chain() const {
    TestIdealOptions o;
    o.eMax = eMax;
    o.confirmWindow = confirmWindow;
    o.gb = gb();
    return o;
  }
};

inline json idealJson(const Ideal& I) { return I.canonicalStrings(); }

inline json chainJson(const TestIdealReport& r) {
  json levels = json::array();
  for (const auto& c : r.chain) levels.push_back(idealJson(c));
  return {{"stabilizedAt", r.stabilizedAt}, {"capped", r.capped}, {"exact", r.exact}, {"levels", levels}};
}

inline json divisorJson(const DivisorSpec& D) { return D.str(); }

/// A finished command: reproducible result plus extra metadata.
struct Outcome {
  json inputs = json::object();
  json result = json::object();
  json meta = json::object();
  std::string text;
};

namespace detail {

inline Polynomial parseSingle(const std::string& s, const RunConfig& cfg) { return parsePolynomial(s, cfg.ring()); }

inline std::vector<Polynomial> parseMany(const std::vector<std::string>& items, const RunConfig& cfg) {
  std::vector<Polynomial> out;
  for (const auto& s : items) {
    auto part = parsePolynomialList(s, cfg.ring());
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

inline json polysJson(const std::vector<Polynomial>& ps) {
  json a = json::array();
  for (const auto& f : ps) a.push_back(f.str());
  return a;
}

}  // namespace detail

/// Runs one command line (without the program name). Returns the exit code.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"charp: Frobenius decompositions, test ideals and F-thresholds over F_p[x_1..x_d]", "charp"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-p", cfg.p, "characteristic (prime)")->required();
    sub->add_option("-d", cfg.d, "number of variables")->capture_default_str();
    sub->add_option("-e,--emax", cfg.eMax, "Frobenius level, or chain level budget (0 = automatic)");
    sub->add_option("--max-den", cfg.maxDen, "largest denominator on rational grids")->capture_default_str();
    sub->add_option("--degree-cap", cfg.degreeCap, "Groebner S-pair degree cap")->capture_default_str();
    sub->add_option("--confirm", cfg.confirmWindow, "extra equal chain levels before accepting stability")
        ->capture_default_str();
    sub->add_flag("--json", cfg.json, "write a JSON certificate");
  };

  std::function<Outcome()> run;
  std::string commandName;

  // decompose
  std::string polyArg;
  auto* decomposeCmd = app.add_subcommand("decompose", "Frobenius decomposition f = sum f_l^(p^e) x^l");
  common(decomposeCmd);
  decomposeCmd->add_option("poly", polyArg, "polynomial")->required();
  decomposeCmd->callback([&] {
    commandName = "decompose";
    run = [&] {
      unsigned e = cfg.eMax ? cfg.eMax : 1;
      Polynomial f = detail::parseSingle(polyArg, cfg);
      auto dec = decompose(f, e);
      Outcome o;
      o.inputs = {{"p", cfg.p}, {"d", cfg.d}, {"e", e}, {"poly", f.str()}};
      json parts = json::array();
      std::ostringstream txt;
      for (const auto& [lambda, part] : dec.parts) {
        std::vector<std::uint32_t> l(lambda.components().begin(), lambda.components().end());
        parts.push_back({{"lambda", l}, {"part", part.str()}});
        txt << "(";
        for (std::size_t i = 0; i < l.size(); ++i) txt << (i ? "," : "") << l[i];
        txt << "): " << part.str() << "\n";
      }
      o.result = {{"parts", parts}};
      o.text = txt.str();
      return o;
    };
  });

  // trace
  auto* traceCmd = app.add_subcommand("trace", "trace map Tr_{F^e}(f), the x^(mu_e) component");
  common(traceCmd);
  traceCmd->add_option("poly", polyArg, "polynomial")->required();
  traceCmd->callback([&] {
    commandName = "trace";
    run = [&] {
      unsigned e = cfg.eMax ? cfg.eMax : 1;
      Polynomial f = detail::parseSingle(polyArg, cfg);
      Outcome o;
      o.inputs = {{"p", cfg.p}, {"d", cfg.d}, {"e", e}, {"poly", f.str()}};
      Polynomial tr = trace(f, e);
      o.result = {{"trace", tr.str()}};
      o.text = tr.str() + "\n";
      return o;
    };
  });

  // root
  std::vector<std::string> gensArg;
  auto* rootCmd = app.add_subcommand("root", "p^e-th root ideal I_e(J)");
  common(rootCmd);
  rootCmd->add_option("generators", gensArg, "generators of J (or one comma-separated list)")->required();
  rootCmd->callback([&] {
    commandName = "root";
    run = [&] {
      unsigned e = cfg.eMax ? cfg.eMax : 1;
      auto gens = detail::parseMany(gensArg, cfg);
      Ideal root = rootIdeal(Ideal(cfg.ring(), gens, cfg.gb()), e);
      Outcome o;
      o.inputs = {{"p", cfg.p}, {"d", cfg.d}, {"e", e}, {"generators", detail::polysJson(gens)}};
      o.result = {{"ideal", idealJson(root)}};
      o.text = root.str() + "\n";
      return o;
    };
  });

  // testideal
  std::string divArg, tArg = "0";
  std::vector<std::string> idealArg;
  auto* tiCmd = app.add_subcommand("testideal", "test ideal tau(R, Delta, a^t)");
  common(tiCmd);
  tiCmd->add_option("--div", divArg, "divisor Delta, e.g. \"1/2*div(x); 1/3*div(y)\"");
  tiCmd->add_option("--ideal", idealArg, "generators of a (default: unit ideal)");
  tiCmd->add_option("-t", tArg, "exponent t of a (rational)")->capture_default_str();
  tiCmd->callback([&] {
    commandName = "testideal";
    run = [&] {
      FieldConfig R = cfg.ring();
      DivisorSpec D = DivisorSpec::parse(divArg, R);
      Ratio t = Ratio::parse(tArg);
      Ideal a = idealArg.empty() ? Ideal::unit(R, cfg.gb()) : Ideal(R, detail::parseMany(idealArg, cfg), cfg.gb());
      auto rep = testIdeal(D, a, t, cfg.chain());
      Outcome o;
      o.inputs = {{"p", cfg.p}, {"d", cfg.d}, {"div", divisorJson(D)}, {"ideal", detail::polysJson(a.generators())},
                  {"t", t.str()}, {"eMax", cfg.chain().budget(cfg.p)}, {"confirm", cfg.confirmWindow}};
      o.result = {{"ideal", idealJson(rep.ideal)}, {"capped", rep.capped}};
      o.meta["chain"] = chainJson(rep);
      o.text = rep.ideal.str() + (rep.capped ? "  [capped: chain did not stabilize]" : "") +
               "\nstabilized at level " + std::to_string(rep.stabilizedAt) + (rep.exact ? " (exact)" : "") + "\n";
      return o;
    };
  });

  // fpt
  auto* fptCmd = app.add_subcommand("fpt", "nu-function bracket for the F-pure threshold");
  common(fptCmd);
  fptCmd->add_option("poly", polyArg, "polynomial in the maximal ideal")->required();
  bool tryExact = false;
  fptCmd->add_flag("--exact", tryExact, "also test rationals with denominator <= --max-den as exact values");
  fptCmd->callback([&] {
    commandName = "fpt";
    run = [&] {
      unsigned e = cfg.eMax ? cfg.eMax : 1;
      Polynomial f = detail::parseSingle(polyArg, cfg);
      auto chainOpts = cfg.chain();
      chainOpts.eMax = 0;
      auto br = fptBracket(f, e, tryExact ? cfg.maxDen : 0, chainOpts);
      Outcome o;
      o.inputs = {{"p", cfg.p}, {"d", cfg.d}, {"e", e}, {"poly", f.str()}};
      if (tryExact) o.inputs["maxDen"] = cfg.maxDen;
      o.result = {{"nu", br.nu}, {"lo", br.lo.str()}, {"hi", br.hi.str()},
                  {"exact", br.exact ? json(br.exact->str()) : json(nullptr)}};
      o.text = "nu = " + std::to_string(br.nu) + "\nfpt in (" + br.lo.str() + ", " + br.hi.str() + "]\n" +
               (br.exact ? "fpt = " + br.exact->str() + "\n" : "");
      return o;
    };
  });

  // jumps
  std::string baseArg, loArg = "0", hiArg = "1";
  bool smallest = false;
  auto* jumpsCmd = app.add_subcommand("jumps", "F-jumping numbers of s -> tau(Delta + s div(g))");
  common(jumpsCmd);
  jumpsCmd->add_option("poly", polyArg, "g, a polynomial in the maximal ideal")->required();
  jumpsCmd->add_option("--base", baseArg, "base divisor Delta (default 0)");
  jumpsCmd->add_option("--lo", loArg, "exclusive lower end of the range")->capture_default_str();
  jumpsCmd->add_option("--hi", hiArg, "inclusive upper end of the range")->capture_default_str();
  jumpsCmd->add_flag("--smallest", smallest, "only the smallest jumping number, by bisection");
  jumpsCmd->callback([&] {
    commandName = "jumps";
    run = [&] {
      FieldConfig R = cfg.ring();
      DivisorSpec D = DivisorSpec::parse(baseArg, R);
      Polynomial g = detail::parseSingle(polyArg, cfg);
      Ratio lo = Ratio::parse(loArg), hi = Ratio::parse(hiArg);
      Outcome o;
      o.inputs = {{"p", cfg.p},           {"d", cfg.d},          {"base", divisorJson(D)},
                  {"g", g.str()},         {"maxDen", cfg.maxDen}, {"eMax", cfg.chain().budget(cfg.p)},
                  {"smallest", smallest}, {"hi", hi.str()}};
      if (smallest) {
        auto sj = smallestJumpingNumber(D, g, cfg.maxDen, cfg.chain(), hi);
        o.result = {{"found", sj.found},
                    {"value", sj.value.str()},
                    {"bracketLo", sj.bracketLo.str()},
                    {"base", idealJson(sj.base)},
                    {"after", idealJson(sj.after)}};
        o.text = sj.found ? "smallest jumping number " + sj.value.str() + " (jump in (" + sj.bracketLo.str() + ", " +
                                sj.value.str() + "])\n"
                          : "no jump up to " + sj.value.str() + "\n";
        return o;
      }
      o.inputs["lo"] = lo.str();
      JumpScanOptions jo;
      jo.chain = cfg.chain();
      auto res = jumpScan(D, g, lo, hi, cfg.maxDen, jo);
      json jumps = json::array();
      std::string txt;
      for (std::size_t i = 0; i < res.jumps.size(); ++i) {
        jumps.push_back({{"s", res.jumps[i].str()}, {"ideal", idealJson(res.ideals[i])}});
        txt += res.jumps[i].str() + ": " + res.ideals[i].str() + "\n";
      }
      o.result = {{"jumps", jumps}, {"gridSize", res.grid.size()}};
      o.text = txt.empty() ? "no jumps on the grid\n" : txt;
      return o;
    };
  });

  // check
  std::string pertArg;
  auto* checkCmd = app.add_subcommand("check", "compare tau(Delta + E) with tau(Delta)");
  common(checkCmd);
  checkCmd->add_option("--base", baseArg, "base divisor Delta (default 0)");
  checkCmd->add_option("--pert", pertArg, "perturbation E")->required();
  checkCmd->callback([&] {
    commandName = "check";
    run = [&] {
      FieldConfig R = cfg.ring();
      DivisorSpec D = DivisorSpec::parse(baseArg, R), E = DivisorSpec::parse(pertArg, R);
      auto c = comparePerturbation(D, E, cfg.chain());
      Outcome o;
      o.inputs = {{"p", cfg.p}, {"d", cfg.d}, {"base", divisorJson(D)}, {"pert", divisorJson(E)},
                  {"eMax", cfg.chain().budget(cfg.p)}};
      o.result = {{"equal", c.equal},
                  {"localEqual", c.localEqual},
                  {"base", idealJson(c.base)},
                  {"perturbed", idealJson(c.perturbed)},
                  {"multiplicity", multAtOrigin(E).str()}};
      o.text = std::string("equal=") + (c.equal ? "true" : "false") + "\ntau(base) = " + c.base.str() +
               "\ntau(base+pert) = " + c.perturbed.str() + "\nmult_0(pert) = " + multAtOrigin(E).str() + "\n";
      return o;
    };
  });

  // scan
  std::vector<std::string> probeArg;
  unsigned nMax = 3, nMin = 1;
  auto* scanCmd = app.add_subcommand("scan", "stability scan of tau(Delta + div(r)/p^n) over probes r");
  common(scanCmd);
  scanCmd->add_option("--base", baseArg, "base divisor Delta (default 0)");
  scanCmd->add_option("--probe", probeArg, "probe polynomial (repeatable; default family if omitted)");
  scanCmd->add_option("--nmax", nMax, "largest n")->capture_default_str();
  scanCmd->add_option("--nmin", nMin, "smallest n (0 includes div(r) itself)")->capture_default_str();
  scanCmd->callback([&] {
    commandName = "scan";
    run = [&] {
      FieldConfig R = cfg.ring();
      DivisorSpec D = DivisorSpec::parse(baseArg, R);
      auto probes = probeArg.empty() ? defaultProbes(R) : detail::parseMany(probeArg, cfg);
      StabilityOptions so;
      so.chain = cfg.chain();
      so.nMin = nMin;
      auto rep = stabilityScan(D, probes, nMax, so);
      Outcome o;
      o.inputs = {{"p", cfg.p},
                  {"d", cfg.d},
                  {"base", divisorJson(D)},
                  {"probes", detail::polysJson(probes)},
                  {"nMin", nMin},
                  {"nMax", nMax},
                  {"eMax", cfg.chain().budget(cfg.p)}};
      json ws = json::array(), tails = json::array();
      std::string txt = "tau(base) = " + rep.baseTau.str() + "\n";
      for (const auto& w : rep.witnesses) {
        ws.push_back({{"probe", w.probe.str()},
                      {"n", w.n},
                      {"ord", w.ord},
                      {"mult", w.tOrd.str()},
                      {"equal", w.equal},
                      {"localEqual", w.localEqual}});
        txt += "  r=" + w.probe.str() + " n=" + std::to_string(w.n) + " mult=" + w.tOrd.str() +
               (w.equal ? "  equal\n" : "  CHANGED\n");
      }
      for (const auto& t : rep.tails) {
        tails.push_back({{"probe", t.probe.str()},
                         {"ord", t.ord},
                         {"tailStart", t.tailStart ? json(*t.tailStart) : json(nullptr)}});
        txt += "  tail for r=" + t.probe.str() + ": " +
               (t.tailStart ? "equal for all n >= " + std::to_string(*t.tailStart) : std::string("none")) + "\n";
      }
      o.result = {{"baseTau", idealJson(rep.baseTau)},
                  {"deltaLower", rep.deltaLower.str()},
                  {"jumpObserved", rep.jumpObserved},
                  {"witnesses", ws},
                  {"tails", tails},
                  {"firstJump", rep.firstJump ? json{{"probe", rep.firstJump->probe.str()},
                                                     {"n", rep.firstJump->n},
                                                     {"s", rep.firstJump->perturbation.parts()[0].t.str()}}
                                              : json(nullptr)}};
      txt += std::string(rep.jumpObserved ? "smallest multiplicity with a change: " : "largest safe multiplicity: ") +
             rep.deltaLower.str() + "\n";
      o.text = txt;
      return o;
    };
  });

  // gb
  auto* gbCmd = app.add_subcommand("gb", "reduced deg-lex Groebner basis");
  common(gbCmd);
  gbCmd->add_option("generators", gensArg, "generators (or one comma-separated list)")->required();
  gbCmd->callback([&] {
    commandName = "gb";
    run = [&] {
      auto gens = detail::parseMany(gensArg, cfg);
      Ideal I(cfg.ring(), gens, cfg.gb());
      Outcome o;
      o.inputs = {{"p", cfg.p}, {"d", cfg.d}, {"generators", detail::polysJson(gens)}};
      o.result = {{"gb", idealJson(I)}};
      std::string txt;
      for (const auto& s : I.canonicalStrings()) txt += s + "\n";
      o.text = txt.empty() ? "0\n" : txt;
      return o;
    };
  });

  app.footer(
      "Polynomials: integers, variables x,y,z (d <= 3) or x1..xd, + - * ^ and parentheses; exponents are integer "
      "literals.\nDivisors: semicolon-separated terms t*div(f) with t = a/b, e.g. \"1/2*div(x^2+y^3); 1/3*div(y)\".");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    auto start = std::chrono::steady_clock::now();
    Outcome o = run();
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (cfg.json) {
      o.meta["elapsedMs"] = ms;
      json cert = {{"command", commandName}, {"inputs", o.inputs}, {"result", o.result}, {"meta", o.meta}};
      out << cert.dump(2) << "\n";
    } else {
      out << o.text;
    }
    return 0;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace charp::cli
