#pragma once

#include <stdexcept>
#include <vector>

#include "polypreserve/atomic_measure.hpp"
#include "polypreserve/const_series.hpp"
#include "polypreserve/moment_checks.hpp"

namespace polypreserve {

// (b, Sigma, nu) with Sigma >= 0 and atomic nu, nu({0}) = 0.
struct LevyTriplet {
  std::vector<Rational> b;
  MatQ sigma;
  AtomicMeasure nu;

  int dimension() const { return static_cast<int>(b.size()); }
};

namespace detail {
// Exact PSD test for small rational symmetric matrices: every principal minor
// is nonnegative.
inline bool psd_exact(const MatQ& m) {
  size_t n = m.rows();
  if (n > 16) throw std::invalid_argument("psd_exact limited to small matrices");
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    MatQ sub(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) sub(i, j) = m(idx[i], idx[j]);
    if (determinant(sub) < 0) return false;
  }
  return true;
}

inline Rational norm2_at_least_one(const std::vector<Rational>& x) {
  Rational acc = 0;
  for (const auto& v : x) acc += v * v;
  return acc;
}
}  // namespace detail

// Builds A = sum a_alpha/alpha! d^alpha from the triplet:
//   a_{e_i}       = b_i + integral_{|x|>=1} x_i dnu
//   a_{e_i+e_j}   = sigma_{ij} + integral x^{e_i+e_j} dnu
//   a_alpha       = integral x^alpha dnu            (|alpha| >= 3)
inline ConstSeries levy_generator(const LevyTriplet& triplet, int d) {
  int n = triplet.dimension();
  if (triplet.nu.n != n || static_cast<int>(triplet.sigma.rows()) != n ||
      static_cast<int>(triplet.sigma.cols()) != n)
    throw std::invalid_argument("triplet dimension mismatch");
  for (const auto& atom : triplet.nu.atoms) {
    bool all_zero = true;
    for (const auto& c : atom.point)
      if (c != 0) all_zero = false;
    if (all_zero) throw std::invalid_argument("Levy measure must not charge the origin");
  }
  if (!detail::psd_exact(triplet.sigma)) throw std::domain_error("Sigma is not positive semidefinite");

  SequenceQ nu_moments = atomic_moments(triplet.nu, d);
  ConstSeries a(n, d);
  for (const auto& alpha : multi_indices_up_to(n, d)) {
    int o = order_of(alpha);
    if (o == 0) continue;
    Rational value = 0;
    if (o == 1) {
      int i = 0;
      while (alpha[static_cast<size_t>(i)] == 0) ++i;
      value = triplet.b[static_cast<size_t>(i)];
      for (const auto& atom : triplet.nu.atoms)
        if (detail::norm2_at_least_one(atom.point) >= 1) value += atom.weight * atom.point[static_cast<size_t>(i)];
    } else if (o == 2) {
      // alpha = e_i + e_j (i == j allowed); sigma enters with multiplicity
      int i = -1, j = -1;
      for (int v = 0; v < n; ++v) {
        if (alpha[static_cast<size_t>(v)] == 2) i = j = v;
        if (alpha[static_cast<size_t>(v)] == 1) (i < 0 ? i : j) = v;
      }
      value = triplet.sigma(static_cast<size_t>(i), static_cast<size_t>(j)) + nu_moments.at(alpha);
    } else {
      value = nu_moments.at(alpha);
    }
    a.set(alpha, value * frac(1, factorial(alpha)));
  }
  return a;
}

// Necessary condition for A in d_{c,+} at n = 1: (a_{k+2})_{k>=0} collects the
// moments of sigma*delta_0 + x^2 dnu and must pass the Hamburger test.
inline HankelReport generator_check_1d(const ConstSeries& a, double tol_factor = 1e-10) {
  if (a.dimension() != 1) throw std::invalid_argument("generator_check_1d requires n = 1");
  std::vector<Rational> tail;
  for (int k = 2; k <= a.order(); ++k)
    tail.push_back(a.at(MultiIndex{k}) * Rational(factorial(static_cast<unsigned>(k))));
  return hamburger_check(tail, tol_factor);
}

}  // namespace polypreserve
