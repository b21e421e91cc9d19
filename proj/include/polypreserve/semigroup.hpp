#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "polypreserve/linalg.hpp"
#include "polypreserve/polynomial.hpp"

namespace polypreserve {

using PolyAction = std::function<Polynomial(const Polynomial&)>;

// Polynomial with floating coefficients; the output side of numeric evolution.
struct NumericPolynomial {
  int n = 1;
  std::map<MultiIndex, double, GradedLex> terms;

  double coefficient(const MultiIndex& a) const {
    auto it = terms.find(a);
    return it == terms.end() ? 0.0 : it->second;
  }

  double eval(const std::vector<double>& y) const {
    double acc = 0;
    for (const auto& [a, c] : terms) {
      double t = c;
      for (size_t i = 0; i < y.size(); ++i)
        for (int j = 0; j < a[i]; ++j) t *= y[i];
      acc += t;
    }
    return acc;
  }
};

namespace detail {

// Echelonized rational span with graded-lex leading monomials.
class PolySpan {
 public:
  // Reduces p against the span; returns the residual.
  Polynomial reduce(Polynomial p) const {
    for (const auto& b : basis_) {
      const auto& lead = b.terms().rbegin()->first;
      Rational c = p.coefficient(lead);
      if (c != 0) p -= b * (c / b.terms().rbegin()->second);
    }
    return p;
  }

  // Returns true if p enlarged the span.
  bool insert(const Polynomial& p) {
    Polynomial r = reduce(p);
    if (r.is_zero()) return false;
    basis_.push_back(r);
    std::sort(basis_.begin(), basis_.end(), [](const Polynomial& a, const Polynomial& b) {
      return GradedLex{}(b.terms().rbegin()->first, a.terms().rbegin()->first);
    });
    return true;
  }

  bool contains(const Polynomial& p) const { return reduce(p).is_zero(); }
  size_t dimension() const { return basis_.size(); }
  const std::vector<Polynomial>& basis() const { return basis_; }

  std::vector<Rational> coordinates(const Polynomial& p) const {
    std::vector<Rational> coords(basis_.size(), Rational(0));
    Polynomial r = p;
    for (size_t i = 0; i < basis_.size(); ++i) {
      const auto& lead = basis_[i].terms().rbegin()->first;
      Rational c = r.coefficient(lead);
      if (c != 0) {
        Rational f = c / basis_[i].terms().rbegin()->second;
        coords[i] = f;
        r -= basis_[i] * f;
      }
    }
    if (!r.is_zero()) throw std::domain_error("polynomial outside the invariant subspace");
    return coords;
  }

 private:
  std::vector<Polynomial> basis_;  // sorted by decreasing leading monomial
};

}  // namespace detail

// Chain V_{alpha,i+1} = V_{alpha,i} + A V_{alpha,i}. Stabilization certifies a
// finite invariant subspace; exceeding the cap is an explicit "unknown", not a
// negative verdict.
struct InvariantChain {
  std::vector<Polynomial> basis;
  int stabilization_index = -1;
  bool stabilized = false;
  int degree_cap = 0;
  int offending_power = -1;
};

inline InvariantChain build_invariant_chain(const PolyAction& action, const std::vector<Polynomial>& seeds,
                                            int degree_cap) {
  InvariantChain chain;
  chain.degree_cap = degree_cap;
  detail::PolySpan span;
  std::vector<Polynomial> frontier;
  for (const auto& s : seeds)
    if (span.insert(s)) frontier.push_back(s);
  for (int i = 0;; ++i) {
    std::vector<Polynomial> next;
    for (const auto& f : frontier) {
      Polynomial img = action(f);
      auto d = img.degree();
      if (d && *d > degree_cap) {
        chain.offending_power = i + 1;
        chain.basis = span.basis();
        return chain;  // unknown beyond cap
      }
      Polynomial res = span.reduce(img);
      if (!res.is_zero()) {
        span.insert(res);
        next.push_back(res);
      }
    }
    if (next.empty()) {
      chain.stabilized = true;
      chain.stabilization_index = i;
      chain.basis = span.basis();
      return chain;
    }
    frontier = std::move(next);
  }
}

inline InvariantChain fd_membership(const PolyAction& action, const MultiIndex& alpha, int degree_cap) {
  return build_invariant_chain(action, {Polynomial::monomial(alpha)}, degree_cap);
}

// Matrix of the action on a chosen invariant basis.
struct MatrixOperator {
  std::vector<Polynomial> basis;
  MatD mat;
};

inline MatrixOperator matrix_on_chain(const PolyAction& action, const InvariantChain& chain) {
  detail::PolySpan span;
  for (const auto& b : chain.basis) span.insert(b);
  size_t m = chain.basis.size();
  MatrixOperator op;
  op.basis = span.basis();
  op.mat = MatD(m, m);
  for (size_t j = 0; j < m; ++j) {
    auto coords = span.coordinates(action(op.basis[j]));
    for (size_t i = 0; i < m; ++i) op.mat(i, j) = to_double(coords[i]);
  }
  return op;
}

inline MatrixOperator matrix_exp(const MatrixOperator& op, double t) {
  MatrixOperator r;
  r.basis = op.basis;
  r.mat = polypreserve::matrix_exp(op.mat * t);
  return r;
}

inline int default_degree_cap(const Polynomial& p0) {
  auto d = p0.degree();
  return 4 * ((d ? *d : 0) + 1) + 16;
}

// e^{tA} p0 through the matrix exponential on the stabilized subspace.
inline NumericPolynomial evolve(const PolyAction& action, const Polynomial& p0, double t,
                                std::optional<int> degree_cap = std::nullopt) {
  int cap = degree_cap.value_or(default_degree_cap(p0));
  std::vector<Polynomial> seeds;
  for (const auto& [a, c] : p0.terms()) seeds.push_back(Polynomial::monomial(a));
  if (seeds.empty()) return NumericPolynomial{p0.dimension(), {}};
  InvariantChain chain = build_invariant_chain(action, seeds, cap);
  if (!chain.stabilized)
    throw std::domain_error("invariant chain exceeded the degree cap: membership unknown");
  detail::PolySpan span;
  for (const auto& b : chain.basis) span.insert(b);
  size_t m = span.dimension();
  MatD amat(m, m);
  const auto& basis = span.basis();
  for (size_t j = 0; j < m; ++j) {
    auto coords = span.coordinates(action(basis[j]));
    for (size_t i = 0; i < m; ++i) amat(i, j) = to_double(coords[i]);
  }
  auto c0 = span.coordinates(p0);
  std::vector<double> c0d(m);
  for (size_t i = 0; i < m; ++i) c0d[i] = to_double(c0[i]);
  MatD et = polypreserve::matrix_exp(amat * t);
  auto ct = et.apply(c0d);
  NumericPolynomial out;
  out.n = p0.dimension();
  for (size_t i = 0; i < m; ++i) {
    if (ct[i] == 0.0) continue;
    for (const auto& [a, c] : basis[i].terms()) {
      double v = out.coefficient(a) + ct[i] * to_double(c);
      if (v == 0.0)
        out.terms.erase(a);
      else
        out.terms[a] = v;
    }
  }
  return out;
}

}  // namespace polypreserve
