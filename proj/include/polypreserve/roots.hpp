#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace polypreserve {

using Complex = std::complex<double>;

namespace detail {

// One Laguerre iteration sequence for a root of p (coefficients ascending).
inline Complex laguerre_root(const std::vector<Complex>& p, Complex x) {
  const int m = static_cast<int>(p.size()) - 1;
  static const double frac[] = {0.0, 0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0};
  for (int it = 1; it <= 80; ++it) {
    Complex b = p[static_cast<size_t>(m)];
    double err = std::abs(b);
    Complex d = 0, f = 0;
    double ax = std::abs(x);
    for (int j = m - 1; j >= 0; --j) {
      f = x * f + d;
      d = x * d + b;
      b = x * b + p[static_cast<size_t>(j)];
      err = std::abs(b) + ax * err;
    }
    err *= 1e-15;
    if (std::abs(b) <= err) return x;  // on the root within roundoff
    Complex g = d / b;
    Complex g2 = g * g;
    Complex h = g2 - 2.0 * f / b;
    Complex sq = std::sqrt(static_cast<double>(m - 1) * (static_cast<double>(m) * h - g2));
    Complex gp = g + sq, gm = g - sq;
    double abp = std::abs(gp), abm = std::abs(gm);
    if (abp < abm) gp = gm;
    Complex dx = (std::max(abp, abm) > 0.0)
                     ? static_cast<double>(m) / gp
                     : std::polar(1.0 + ax, static_cast<double>(it));
    Complex x1 = x - dx;
    if (x == x1) return x;
    if (it % 10)
      x = x1;
    else
      x = x - frac[it / 10] * dx;  // break limit cycles
  }
  throw std::runtime_error("laguerre: too many iterations");
}

}  // namespace detail

// All complex roots of p (ascending real coefficients), each polished against
// the undeflated polynomial.
inline std::vector<Complex> polynomial_roots(const std::vector<double>& coeffs) {
  // strip leading zeros
  std::vector<Complex> p(coeffs.begin(), coeffs.end());
  while (p.size() > 1 && std::abs(p.back()) == 0.0) p.pop_back();
  if (p.size() <= 1) return {};
  std::vector<Complex> full = p;
  std::vector<Complex> roots;
  while (p.size() > 1) {
    Complex x = detail::laguerre_root(p, Complex(0, 0));
    if (std::fabs(x.imag()) <= 1e-14 * (1.0 + std::fabs(x.real()))) x = Complex(x.real(), 0.0);
    roots.push_back(x);
    // synthetic division
    std::vector<Complex> q(p.size() - 1);
    Complex rem = p.back();
    for (size_t j = p.size() - 1; j-- > 0;) {
      q[j] = rem;
      rem = p[j] + rem * x;
    }
    p = q;
  }
  for (auto& r : roots) r = detail::laguerre_root(full, r);
  return roots;
}

// Newton with bisection fallback inside a sign-change bracket.
inline double refine_real_root(const std::vector<double>& coeffs, double lo, double hi,
                               double tol = 1e-13) {
  auto eval = [&](double x) {
    double acc = 0;
    for (size_t j = coeffs.size(); j-- > 0;) acc = acc * x + coeffs[j];
    return acc;
  };
  auto deriv = [&](double x) {
    double acc = 0;
    for (size_t j = coeffs.size(); j-- > 1;) acc = acc * x + coeffs[j] * static_cast<double>(j);
    return acc;
  };
  double flo = eval(lo), fhi = eval(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if (flo * fhi > 0) {
    // no bracket: pure Newton from the midpoint
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 100; ++i) {
      double d = deriv(x);
      if (d == 0) break;
      double step = eval(x) / d;
      x -= step;
      if (std::fabs(step) < tol * (1.0 + std::fabs(x))) break;
    }
    return x;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    double fx = eval(x);
    if (fx == 0) return x;
    if ((flo < 0) == (fx < 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    double d = deriv(x);
    double xn = (d != 0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::fabs(xn - x) < tol * (1.0 + std::fabs(xn))) return xn;
    x = xn;
  }
  return x;
}

}  // namespace polypreserve
