#pragma once

#include <random>

#include "polypreserve/polynomial.hpp"
#include "polypreserve/const_series.hpp"

namespace testutil {

using namespace polypreserve;

inline Rational random_rational(std::mt19937& rng, int num_range = 9, int den_range = 5) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return frac(num(rng), den(rng));
}

inline Polynomial random_polynomial(std::mt19937& rng, int n, int max_deg, int max_terms) {
  Polynomial p(n);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  int m = nterms(rng);
  for (int t = 0; t < m; ++t) {
    MultiIndex a = zero_index(n);
    int budget = deg(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int j = 0; j < budget; ++j) ++a[static_cast<size_t>(pick(rng))];
    p.add_term(a, random_rational(rng));
  }
  return p;
}

inline ConstSeries random_group_element(std::mt19937& rng, int n, int d, int max_terms = 6) {
  ConstSeries s = ConstSeries::one(n, d);
  auto idx = multi_indices_up_to(n, d);
  std::uniform_int_distribution<size_t> pick(1, idx.empty() ? 1 : idx.size() - 1);
  std::uniform_int_distribution<int> nterms(0, max_terms);
  int m = nterms(rng);
  for (int t = 0; t < m && idx.size() > 1; ++t) s.set(idx[pick(rng)], random_rational(rng));
  return s;
}

inline ConstSeries random_algebra_element(std::mt19937& rng, int n, int d, int max_terms = 6) {
  ConstSeries s = random_group_element(rng, n, d, max_terms);
  s.set(zero_index(n), 0);
  return s;
}

}  // namespace testutil
