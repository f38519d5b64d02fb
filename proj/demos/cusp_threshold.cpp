// F-pure threshold and test ideals of the cusp x^2 + y^3 over F_7.

#include <iostream>

#include "charp/charp.hpp"

int main() {
  using namespace charp;
  FieldConfig R(7, 2);
  Polynomial cusp = parsePolynomial("x^2 + y^3", R);

  for (unsigned e = 1; e <= 3; ++e) {
    auto br = fptBracket(cusp, e);
    std::cout << "e=" << e << "  nu=" << br.nu << "  fpt in (" << br.lo << ", " << br.hi << "]\n";
  }

  TestIdealOptions opts;
  opts.eMax = 8;
  auto jump = smallestJumpingNumber(DivisorSpec(R), cusp, 42, opts);
  std::cout << "smallest jumping number: " << jump.value << "\n";

  for (const char* t : {"4/5", "5/6", "1"}) {
    auto rep = testIdeal(DivisorSpec::single(cusp, Ratio::parse(t)), opts);
    std::cout << "tau(f^" << t << ") = " << rep.ideal.str() << "\n";
  }
}
