#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "polypreserve/sequences.hpp"

namespace polypreserve {

// Finitely many weighted points; weights strictly positive, points distinct.
template <class T>
struct AtomicMeasureT {
  struct Atom {
    std::vector<T> point;
    T weight;
  };

  int n = 1;
  std::vector<Atom> atoms;

  AtomicMeasureT() = default;
  explicit AtomicMeasureT(int n_) : n(n_) {}

  void add_atom(std::vector<T> point, T weight) {
    if (static_cast<int>(point.size()) != n) throw std::invalid_argument("atom dimension mismatch");
    if (!(weight > T(0))) throw std::invalid_argument("atom weight must be positive");
    for (auto& a : atoms) {
      if (a.point == point) {
        a.weight += weight;
        return;
      }
    }
    atoms.push_back({std::move(point), weight});
  }

  T total_mass() const {
    T m(0);
    for (const auto& a : atoms) m += a.weight;
    return m;
  }
};

using AtomicMeasure = AtomicMeasureT<Rational>;
using NumericAtomicMeasure = AtomicMeasureT<double>;

namespace detail {
template <class T>
T power_of_point(const std::vector<T>& x, const MultiIndex& a) {
  T r(1);
  for (size_t i = 0; i < x.size(); ++i) {
    if constexpr (std::is_same_v<T, Rational>) {
      if (a[i]) r *= rational_pow(x[i], static_cast<unsigned>(a[i]));
    } else {
      if (a[i]) r *= std::pow(x[i], a[i]);
    }
  }
  return r;
}
}  // namespace detail

// s_alpha = sum_i c_i x_i^alpha
template <class T>
SequenceND<T> atomic_moments(const AtomicMeasureT<T>& mu, int order) {
  SequenceND<T> s(mu.n, order);
  for (const auto& alpha : multi_indices_up_to(mu.n, order)) {
    T acc(0);
    for (const auto& a : mu.atoms) acc += a.weight * detail::power_of_point(a.point, alpha);
    s.set(alpha, acc);
  }
  return s;
}

// mu * nu = pushforward of mu x nu under (x,y) -> x+y; coincident atoms merge.
template <class T>
AtomicMeasureT<T> additive_convolve(const AtomicMeasureT<T>& mu, const AtomicMeasureT<T>& nu) {
  if (mu.n != nu.n) throw std::invalid_argument("dimension mismatch");
  AtomicMeasureT<T> r(mu.n);
  for (const auto& a : mu.atoms)
    for (const auto& b : nu.atoms) {
      std::vector<T> p(a.point.size());
      for (size_t i = 0; i < p.size(); ++i) p[i] = a.point[i] + b.point[i];
      r.add_atom(std::move(p), a.weight * b.weight);
    }
  return r;
}

// Pushforward under componentwise product; the measure whose moments are the
// Hadamard product of the factors' moments.
template <class T>
AtomicMeasureT<T> multiplicative_convolve(const AtomicMeasureT<T>& mu, const AtomicMeasureT<T>& nu) {
  if (mu.n != nu.n) throw std::invalid_argument("dimension mismatch");
  AtomicMeasureT<T> r(mu.n);
  for (const auto& a : mu.atoms)
    for (const auto& b : nu.atoms) {
      std::vector<T> p(a.point.size());
      for (size_t i = 0; i < p.size(); ++i) p[i] = a.point[i] * b.point[i];
      r.add_atom(std::move(p), a.weight * b.weight);
    }
  return r;
}

}  // namespace polypreserve
