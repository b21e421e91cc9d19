// Prints the eventual-positivity thresholds tau_a of the quadratic generator
// a d + (x^2-1)/2 d^2 on R[x]_{<=2} for a few drift strengths.

#include <cstdio>

#include "polypreserve/eventual.hpp"

using namespace polypreserve;

int main() {
  std::printf("%12s  %-12s  %s\n", "a", "class", "tau bracket");
  for (double a : {0.4, 0.44721360, 0.45, 1.0, 10.0, 100.0}) {
    auto rep = eventual_quadratic(a, 0.0, 200.0);
    if (rep.classification == EventualClass::eventually)
      std::printf("%12.8f  %-12s  [%.10g, %.10g]\n", a, to_string(rep.classification), rep.lo, rep.hi);
    else
      std::printf("%12.8f  %-12s  -\n", a, to_string(rep.classification));
  }
  return 0;
}
