#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "polypreserve/atomic_measure.hpp"
#include "polypreserve/linalg.hpp"
#include "polypreserve/roots.hpp"

namespace polypreserve {

struct RecoveredMeasure {
  NumericAtomicMeasure measure;
  int atom_count = 0;
  bool reduced = false;      // a singular Hankel forced fewer atoms
  bool exact = false;        // all-rational path succeeded
  AtomicMeasure rational_measure;
};

namespace detail {

// Monic Prony polynomial: H_{k-1} c = -(s_k..s_{2k-1}); returns false when the
// Hankel block is singular, which signals that fewer atoms suffice.
inline bool prony_coefficients(const std::vector<double>& s, int k, std::vector<double>& monic) {
  MatD h(static_cast<size_t>(k), static_cast<size_t>(k));
  double scale = 0;
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < k; ++l) {
      h(static_cast<size_t>(j), static_cast<size_t>(l)) = s[static_cast<size_t>(j + l)];
      scale = std::max(scale, std::fabs(s[static_cast<size_t>(j + l)]));
    }
  std::vector<double> rhs(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) rhs[static_cast<size_t>(j)] = -s[static_cast<size_t>(k + j)];
  std::vector<size_t> perm;
  MatD lu;
  int sign;
  if (!lu_decompose(h, perm, lu, sign)) return false;
  double min_pivot = 1e300;
  for (int i = 0; i < k; ++i) min_pivot = std::min(min_pivot, std::fabs(lu(static_cast<size_t>(i), static_cast<size_t>(i))));
  if (min_pivot <= 1e-10 * std::max(scale, 1.0)) return false;
  auto c = lu_solve(lu, perm, rhs);
  monic.assign(c.begin(), c.end());
  monic.push_back(1.0);
  return true;
}

inline void newton_polish(const std::vector<double>& s, std::vector<double>& x, std::vector<double>& w) {
  const int k = static_cast<int>(x.size());
  const int m = 2 * k;
  for (int pass = 0; pass < 4; ++pass) {
    MatD jac(static_cast<size_t>(m), static_cast<size_t>(2 * k));
    std::vector<double> f(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) {
      double acc = 0;
      for (int i = 0; i < k; ++i) {
        double pj = std::pow(x[static_cast<size_t>(i)], j);
        acc += w[static_cast<size_t>(i)] * pj;
        jac(static_cast<size_t>(j), static_cast<size_t>(i)) =
            j == 0 ? 0.0 : j * w[static_cast<size_t>(i)] * std::pow(x[static_cast<size_t>(i)], j - 1);
        jac(static_cast<size_t>(j), static_cast<size_t>(k + i)) = pj;
      }
      f[static_cast<size_t>(j)] = acc - s[static_cast<size_t>(j)];
    }
    std::vector<double> step;
    if (!solve(jac, f, step)) return;
    double sz = 0;
    for (int i = 0; i < k; ++i) {
      x[static_cast<size_t>(i)] -= step[static_cast<size_t>(i)];
      w[static_cast<size_t>(i)] -= step[static_cast<size_t>(k + i)];
      sz = std::max(sz, std::fabs(step[static_cast<size_t>(i)]));
    }
    if (sz < 1e-15) return;
  }
}

// Try to certify the numeric answer as exact rational data.
inline bool exact_path(const std::vector<Rational>& s, int k, const std::vector<double>& xnum,
                       AtomicMeasure& out) {
  MatQ h(static_cast<size_t>(k), static_cast<size_t>(k));
  for (int j = 0; j < k; ++j)
    for (int l = 0; l < k; ++l) h(static_cast<size_t>(j), static_cast<size_t>(l)) = s[static_cast<size_t>(j + l)];
  std::vector<Rational> rhs(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) rhs[static_cast<size_t>(j)] = -s[static_cast<size_t>(k + j)];
  std::vector<Rational> c;
  if (!solve(h, rhs, c)) return false;
  c.push_back(Rational(1));
  std::vector<Rational> roots;
  for (double xr : xnum) {
    Rational cand = rational_reconstruct(xr);
    if (std::fabs(to_double(cand) - xr) > 1e-9 * (1.0 + std::fabs(xr))) return false;
    Rational val = 0;
    for (size_t j = c.size(); j-- > 0;) val = val * cand + c[j];
    if (val != 0) return false;
    roots.push_back(cand);
  }
  MatQ v(static_cast<size_t>(k), static_cast<size_t>(k));
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) v(static_cast<size_t>(j), static_cast<size_t>(i)) = rational_pow(roots[static_cast<size_t>(i)], static_cast<unsigned>(j));
  std::vector<Rational> mom(s.begin(), s.begin() + k);
  std::vector<Rational> w;
  if (!solve(v, mom, w)) return false;
  out = AtomicMeasure(1);
  for (int i = 0; i < k; ++i) {
    if (!(w[static_cast<size_t>(i)] > 0)) return false;
    out.add_atom({roots[static_cast<size_t>(i)]}, w[static_cast<size_t>(i)]);
  }
  // every provided moment must reproduce exactly
  auto check = atomic_moments(out, static_cast<int>(s.size()) - 1);
  for (size_t j = 0; j < s.size(); ++j)
    if (check.at(MultiIndex{static_cast<int>(j)}) != s[j]) return false;
  return true;
}

}  // namespace detail

// Orthogonal-polynomial / companion-root recovery of a k-atomic measure from
// its first 2k moments (classical Prony). Needs s_0..s_{2k-1}.
inline RecoveredMeasure recover_atoms(const std::vector<double>& s, int k) {
  if (k < 1) throw std::invalid_argument("atom count must be positive");
  if (static_cast<int>(s.size()) < 2 * k) throw std::invalid_argument("need at least 2k moments");
  RecoveredMeasure result;
  int kk = k;
  std::vector<double> monic;
  while (kk > 0 && !detail::prony_coefficients(s, kk, monic)) {
    --kk;
    result.reduced = true;
  }
  if (kk == 0) {
    // the zero measure
    result.atom_count = 0;
    return result;
  }
  auto croots = polynomial_roots(monic);
  std::vector<double> x;
  for (const auto& z : croots) x.push_back(z.real());
  std::sort(x.begin(), x.end());
  // bracketed Newton refinement against the monic polynomial
  for (size_t i = 0; i < x.size(); ++i) {
    double gap_lo = (i == 0) ? 1.0 + std::fabs(x[i]) : 0.5 * (x[i] - x[i - 1]);
    double gap_hi = (i + 1 == x.size()) ? 1.0 + std::fabs(x[i]) : 0.5 * (x[i + 1] - x[i]);
    x[i] = refine_real_root(monic, x[i] - gap_lo, x[i] + gap_hi);
  }
  MatD v(static_cast<size_t>(kk), static_cast<size_t>(kk));
  for (int j = 0; j < kk; ++j)
    for (int i = 0; i < kk; ++i) v(static_cast<size_t>(j), static_cast<size_t>(i)) = std::pow(x[static_cast<size_t>(i)], j);
  std::vector<double> rhs(s.begin(), s.begin() + kk);
  std::vector<double> w;
  if (!solve(v, rhs, w)) throw std::runtime_error("degenerate atom configuration");
  detail::newton_polish(s, x, w);
  result.atom_count = kk;
  result.measure = NumericAtomicMeasure(1);
  for (int i = 0; i < kk; ++i) {
    if (!(w[static_cast<size_t>(i)] > 0))
      throw std::domain_error("sequence is not a moment sequence of k positive atoms");
    result.measure.add_atom({x[static_cast<size_t>(i)]}, w[static_cast<size_t>(i)]);
  }
  return result;
}

inline RecoveredMeasure recover_atoms(const std::vector<Rational>& s, int k) {
  std::vector<double> sd(s.size());
  for (size_t i = 0; i < s.size(); ++i) sd[i] = to_double(s[i]);
  RecoveredMeasure result = recover_atoms(sd, k);
  if (result.atom_count > 0) {
    std::vector<double> xs;
    for (const auto& a : result.measure.atoms) xs.push_back(a.point[0]);
    AtomicMeasure exact_measure;
    if (detail::exact_path(s, result.atom_count, xs, exact_measure)) {
      result.exact = true;
      result.rational_measure = exact_measure;
    }
  }
  return result;
}

}  // namespace polypreserve
