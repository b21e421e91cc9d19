// Checks the pointwise moment conditions for exp(t d^2/dx^2) across a range
// of times and prints the verdicts.

#include <cstdio>

#include "polypreserve/polypreserve.hpp"

using namespace polypreserve;

int main() {
  CheckConfig cfg;
  for (Rational t : {Rational(-1), frac(-1, 10), Rational(0), frac(1, 10), Rational(1), Rational(10)}) {
    ConstSeries a = ConstSeries::zero(1, 10);
    a.set({2}, t);
    ConstSeries flow = exp_series(a);
    auto v = check_preserver(flow, KDomain::reals(), cfg);
    std::printf("t = %8.2f  ->  %s", to_double(t), v.pass ? "no violation found" : "fail");
    if (v.witness) std::printf(" (Hankel order %d)", v.witness->hankel_order);
    std::printf("\n");
  }
  return 0;
}
