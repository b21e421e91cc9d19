#pragma once

#include <string>
#include <vector>

#include "polypreserve/linalg.hpp"
#include "polypreserve/sequences.hpp"

namespace polypreserve {

enum class PsdVerdict { psd, borderline, fail };

inline const char* to_string(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::psd: return "psd";
    case PsdVerdict::borderline: return "borderline";
    default: return "fail";
  }
}

struct HankelOrderResult {
  int order = 0;
  double min_eigenvalue = 0;
  double tolerance = 0;
  PsdVerdict verdict = PsdVerdict::psd;
};

// Necessary-conditions report at finite truncation; a pass never asserts
// "is a moment sequence", only that no violation was found up to order N.
struct HankelReport {
  std::vector<HankelOrderResult> orders;
  bool pass = true;
  bool borderline = false;
  int first_fail_order = -1;

  void add(const HankelOrderResult& r) {
    orders.push_back(r);
    if (r.verdict == PsdVerdict::fail && pass) {
      pass = false;
      first_fail_order = r.order;
    }
    if (r.verdict == PsdVerdict::borderline) borderline = true;
  }
};

inline MatD hankel(const std::vector<double>& s, int i) {
  if (2 * i + 1 > static_cast<int>(s.size())) throw std::invalid_argument("insufficient data for Hankel order");
  MatD h(static_cast<size_t>(i) + 1, static_cast<size_t>(i) + 1);
  for (int j = 0; j <= i; ++j)
    for (int l = 0; l <= i; ++l) h(static_cast<size_t>(j), static_cast<size_t>(l)) = s[static_cast<size_t>(j + l)];
  return h;
}

inline MatQ hankel(const std::vector<Rational>& s, int i) {
  if (2 * i + 1 > static_cast<int>(s.size())) throw std::invalid_argument("insufficient data for Hankel order");
  MatQ h(static_cast<size_t>(i) + 1, static_cast<size_t>(i) + 1);
  for (int j = 0; j <= i; ++j)
    for (int l = 0; l <= i; ++l) h(static_cast<size_t>(j), static_cast<size_t>(l)) = s[static_cast<size_t>(j + l)];
  return h;
}

inline HankelOrderResult psd_check(const MatD& h, int order, double tol_factor = 1e-10) {
  HankelOrderResult r;
  r.order = order;
  r.tolerance = tol_factor * std::max(inf_norm(h), 1.0);
  auto ev = symmetric_eigenvalues(h);
  r.min_eigenvalue = ev.front();
  if (r.min_eigenvalue >= r.tolerance)
    r.verdict = PsdVerdict::psd;
  else if (r.min_eigenvalue >= -r.tolerance)
    r.verdict = PsdVerdict::borderline;
  else
    r.verdict = PsdVerdict::fail;
  return r;
}

// Hamburger necessary conditions: H_0 .. H_{floor(N/2)} PSD.
inline HankelReport hamburger_check(const std::vector<double>& s, double tol_factor = 1e-10) {
  HankelReport rep;
  int imax = (static_cast<int>(s.size()) - 1) / 2;
  for (int i = 0; i <= imax; ++i) rep.add(psd_check(hankel(s, i), i, tol_factor));
  return rep;
}

inline HankelReport hamburger_check(const std::vector<Rational>& s, double tol_factor = 1e-10) {
  std::vector<double> d(s.size());
  for (size_t i = 0; i < s.size(); ++i) d[i] = to_double(s[i]);
  return hamburger_check(d, tol_factor);
}

struct HalflineReport {
  HankelReport base;     // H_i(s)
  HankelReport shifted;  // H_i((s_{k+1} - c s_k)_k), support in [c, oo)
  bool pass = true;
};

inline HalflineReport halfline_check(const std::vector<double>& s, double c = 0.0,
                                     double tol_factor = 1e-10) {
  HalflineReport rep;
  rep.base = hamburger_check(s, tol_factor);
  std::vector<double> sh;
  for (size_t k = 0; k + 1 < s.size(); ++k) sh.push_back(s[k + 1] - c * s[k]);
  if (!sh.empty()) rep.shifted = hamburger_check(sh, tol_factor);
  rep.pass = rep.base.pass && rep.shifted.pass;
  return rep;
}

inline HalflineReport stieltjes_check(const std::vector<double>& s, double tol_factor = 1e-10) {
  return halfline_check(s, 0.0, tol_factor);
}

inline HalflineReport stieltjes_check(const std::vector<Rational>& s, double tol_factor = 1e-10) {
  std::vector<double> d(s.size());
  for (size_t i = 0; i < s.size(); ++i) d[i] = to_double(s[i]);
  return stieltjes_check(d, tol_factor);
}

template <class T>
struct HausdorffEntry {
  int m = 0, p = 0;
  T value{};
  bool ok = true;
};

// L_s((x-a)^m (b-x)^p) >= 0 for all m+p <= N. Exact when T = Rational.
template <class T>
struct HausdorffReport {
  std::vector<HausdorffEntry<T>> entries;
  bool pass = true;
  int witness_m = -1, witness_p = -1;
};

template <class T>
HausdorffReport<T> hausdorff_check(const std::vector<T>& s, const T& a = T(0), const T& b = T(1),
                                   double tol_factor = 1e-12) {
  HausdorffReport<T> rep;
  int n = static_cast<int>(s.size()) - 1;
  double scale = 0;
  if constexpr (!std::is_same_v<T, Rational>)
    for (const T& v : s) scale = std::max(scale, std::fabs(static_cast<double>(v)));
  for (int m = 0; m + 0 <= n; ++m) {
    for (int p = 0; m + p <= n; ++p) {
      // expand (x-a)^m (b-x)^p = sum_{i,j} binom(m,i)(-a)^{m-i} binom(p,j) b^{p-j} (-1)^j x^{i+j}
      T acc(0);
      for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= p; ++j) {
          T coef(1);
          if constexpr (std::is_same_v<T, Rational>) {
            coef = Rational(binomial(static_cast<unsigned>(m), static_cast<unsigned>(i))) *
                   rational_pow(-a, static_cast<unsigned>(m - i)) *
                   Rational(binomial(static_cast<unsigned>(p), static_cast<unsigned>(j))) *
                   rational_pow(b, static_cast<unsigned>(p - j));
            if (j % 2) coef = -coef;
          } else {
            coef = to_double(Rational(binomial(static_cast<unsigned>(m), static_cast<unsigned>(i))) *
                             Rational(binomial(static_cast<unsigned>(p), static_cast<unsigned>(j)))) *
                   std::pow(-a, m - i) * std::pow(b, p - j) * ((j % 2) ? -1.0 : 1.0);
          }
          acc += coef * s[static_cast<size_t>(i + j)];
        }
      }
      HausdorffEntry<T> e;
      e.m = m;
      e.p = p;
      e.value = acc;
      if constexpr (std::is_same_v<T, Rational>)
        e.ok = acc >= 0;
      else
        e.ok = acc >= -tol_factor * std::max(scale, 1.0);
      if (!e.ok && rep.pass) {
        rep.pass = false;
        rep.witness_m = m;
        rep.witness_p = p;
      }
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace polypreserve
