#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "polypreserve/multi_index.hpp"
#include "polypreserve/polynomial.hpp"
#include "polypreserve/rational.hpp"

namespace polypreserve {

// Truncated sequence (s_alpha)_{|alpha| <= order}; absent entries are zero.
template <class T>
struct SequenceND {
  int n = 1;
  int order = 0;
  std::map<MultiIndex, T, GradedLex> values;

  SequenceND() = default;
  SequenceND(int n_, int order_) : n(n_), order(order_) {}

  T at(const MultiIndex& a) const {
    auto it = values.find(a);
    return it == values.end() ? T(0) : it->second;
  }

  void set(const MultiIndex& a, const T& v) {
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("sequence index dimension mismatch");
    if (order_of(a) > order) throw std::invalid_argument("sequence index beyond truncation");
    if (v == T(0))
      values.erase(a);
    else
      values[a] = v;
  }

  friend bool operator==(const SequenceND& a, const SequenceND& b) {
    return a.n == b.n && a.order == b.order && a.values == b.values;
  }
};

using SequenceQ = SequenceND<Rational>;
using SequenceD = SequenceND<double>;

template <class T>
SequenceND<T> sequence_1d(const std::vector<T>& v) {
  SequenceND<T> s(1, static_cast<int>(v.size()) - 1);
  for (size_t k = 0; k < v.size(); ++k) s.set(MultiIndex{static_cast<int>(k)}, v[k]);
  return s;
}

template <class T>
std::vector<T> as_1d(const SequenceND<T>& s) {
  if (s.n != 1) throw std::invalid_argument("sequence is not one-dimensional");
  std::vector<T> v(static_cast<size_t>(s.order) + 1, T(0));
  for (const auto& [a, val] : s.values) v[static_cast<size_t>(a[0])] = val;
  return v;
}

// L_s(p) = sum p_alpha s_alpha
inline Rational riesz_apply(const SequenceQ& s, const Polynomial& p) {
  if (p.dimension() != s.n) throw std::invalid_argument("dimension mismatch");
  auto d = p.degree();
  if (d && *d > s.order) throw std::domain_error("polynomial degree exceeds sequence truncation");
  Rational acc = 0;
  for (const auto& [a, c] : p.terms()) acc += c * s.at(a);
  return acc;
}

// Binomial convolution, truncated to the smaller order:
// (s*t)_alpha = sum_{beta<=alpha} binom(alpha,beta) s_beta t_{alpha-beta}.
template <class T>
SequenceND<T> convolve(const SequenceND<T>& s, const SequenceND<T>& t) {
  if (s.n != t.n) throw std::invalid_argument("dimension mismatch");
  SequenceND<T> u(s.n, std::min(s.order, t.order));
  for (const auto& alpha : multi_indices_up_to(u.n, u.order)) {
    T acc(0);
    for (const auto& beta : sub_indices(alpha)) {
      T sv = s.at(beta);
      if (sv == T(0)) continue;
      T tv = t.at(sub(alpha, beta));
      if (tv == T(0)) continue;
      if constexpr (std::is_same_v<T, Rational>)
        acc += Rational(binomial(alpha, beta)) * sv * tv;
      else
        acc += to_double(Rational(binomial(alpha, beta))) * sv * tv;
    }
    u.set(alpha, acc);
  }
  return u;
}

template <class T>
SequenceND<T> hadamard(const SequenceND<T>& s, const SequenceND<T>& t) {
  if (s.n != t.n) throw std::invalid_argument("dimension mismatch");
  SequenceND<T> u(s.n, std::min(s.order, t.order));
  for (const auto& [a, v] : s.values) {
    if (order_of(a) > u.order) continue;
    T tv = t.at(a);
    if (tv != T(0)) u.set(a, v * tv);
  }
  return u;
}

inline SequenceD to_double_sequence(const SequenceQ& s) {
  SequenceD d(s.n, s.order);
  for (const auto& [a, v] : s.values) d.set(a, to_double(v));
  return d;
}

}  // namespace polypreserve
