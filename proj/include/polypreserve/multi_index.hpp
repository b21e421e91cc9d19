#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "polypreserve/rational.hpp"

namespace polypreserve {

// Exponent tuple alpha in N_0^n.
using MultiIndex = std::vector<int>;

inline int order_of(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

inline MultiIndex zero_index(int n) { return MultiIndex(static_cast<size_t>(n), 0); }

inline MultiIndex unit_index(int n, int i) {
  MultiIndex e = zero_index(n);
  e[static_cast<size_t>(i)] = 1;
  return e;
}

// beta <= alpha componentwise
inline bool divides(const MultiIndex& b, const MultiIndex& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (b[i] > a[i]) return false;
  return true;
}

inline MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r = a;
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] -= b[i];
    if (r[i] < 0) throw std::invalid_argument("multi-index subtraction below zero");
  }
  return r;
}

// Graded lexicographic order: first by |alpha|, then lexicographically.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    int oa = order_of(a), ob = order_of(b);
    if (oa != ob) return oa < ob;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

inline Integer factorial(const MultiIndex& a) {
  Integer r = 1;
  for (int ai : a) r *= factorial(static_cast<unsigned>(ai));
  return r;
}

inline Integer binomial(const MultiIndex& a, const MultiIndex& b) {
  Integer r = 1;
  for (size_t i = 0; i < a.size(); ++i) r *= binomial(static_cast<unsigned>(a[i]), static_cast<unsigned>(b[i]));
  return r;
}

namespace detail {
inline void enumerate_rec(int n, int pos, int remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == n - 1) {
    cur[static_cast<size_t>(pos)] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[static_cast<size_t>(pos)] = v;
    enumerate_rec(n, pos + 1, remaining - v, cur, out);
  }
}
}  // namespace detail

// All alpha with |alpha| == k, lexicographically descending in the first slot,
// which together with the outer loop below yields graded-lex order overall.
inline std::vector<MultiIndex> multi_indices_of_order(int n, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur = zero_index(n);
  detail::enumerate_rec(n, 0, k, cur, out);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

inline std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_order; ++k) {
    auto layer = multi_indices_of_order(n, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// All beta with beta <= alpha componentwise.
inline std::vector<MultiIndex> sub_indices(const MultiIndex& a) {
  std::vector<MultiIndex> out;
  MultiIndex cur = zero_index(static_cast<int>(a.size()));
  size_t total = 1;
  for (int ai : a) total *= static_cast<size_t>(ai + 1);
  out.reserve(total);
  for (;;) {
    out.push_back(cur);
    size_t i = 0;
    for (; i < a.size(); ++i) {
      if (cur[i] < a[i]) {
        ++cur[i];
        break;
      }
      cur[i] = 0;
    }
    if (i == a.size()) break;
  }
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

}  // namespace polypreserve
