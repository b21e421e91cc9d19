#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace polypreserve {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer factorial(unsigned k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// mpq_class(num, den) does not canonicalize; this does.
inline Rational frac(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational_pow(const Rational& base, unsigned e) {
  Rational r = 1;
  Rational b = base;
  unsigned k = e;
  while (k) {
    if (k & 1u) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// Accepts "3", "-7/2", "0.25" style literals.
inline Rational rational_from_string(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    q.canonicalize();
    return q;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  Integer num(digits, 10);
  Integer den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Nearest rational with small denominator (continued fractions); used to test
// whether a numeric root is exactly rational.
inline Rational rational_reconstruct(double x, long max_den = 1000000) {
  bool neg = x < 0;
  double v = neg ? -x : x;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(frac);
    if (fl > 1e18) break;
    long a = static_cast<long>(fl);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - fl;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rational q(p1, q1 == 0 ? 1 : q1);
  q.canonicalize();
  if (neg) q = -q;
  return q;
}

}  // namespace polypreserve
