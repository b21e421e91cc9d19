#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>

#include "polypreserve/polynomial.hpp"

namespace polypreserve {

// Linear operator in canonical form T = sum_alpha q_alpha * d^alpha,
// truncated at |alpha| <= order. Absent alpha means q_alpha = 0.
class OperatorSeries {
 public:
  using CoeffMap = std::map<MultiIndex, Polynomial, GradedLex>;

  OperatorSeries(int n, int order) : n_(n), order_(order) {
    if (n < 1 || order < 0) throw std::invalid_argument("bad operator dimensions");
  }

  int dimension() const { return n_; }
  int order() const { return order_; }
  const CoeffMap& coefficients() const { return coeffs_; }

  Polynomial coefficient(const MultiIndex& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Polynomial(n_) : it->second;
  }

  void set_coefficient(const MultiIndex& alpha, const Polynomial& q) {
    if (static_cast<int>(alpha.size()) != n_ || q.dimension() != n_)
      throw std::invalid_argument("coefficient dimension mismatch");
    if (order_of(alpha) > order_) throw std::invalid_argument("coefficient beyond truncation order");
    if (q.is_zero())
      coeffs_.erase(alpha);
    else
      coeffs_[alpha] = q;
  }

  static OperatorSeries identity(int n, int order) {
    OperatorSeries t(n, order);
    t.set_coefficient(zero_index(n), Polynomial::constant(n, 1));
    return t;
  }

  Polynomial apply(const Polynomial& p) const {
    if (p.dimension() != n_) throw std::invalid_argument("operand dimension mismatch");
    auto d = p.degree();
    if (d && *d > order_)
      throw std::domain_error("polynomial degree exceeds operator truncation order");
    Polynomial r(n_);
    for (const auto& [alpha, q] : coeffs_) {
      Polynomial dp = p.derive(alpha);
      if (!dp.is_zero()) r += q * dp;
    }
    return r;
  }

  bool is_degree_preserving() const {
    for (const auto& [alpha, q] : coeffs_) {
      auto d = q.degree();
      if (d && *d > order_of(alpha)) return false;
    }
    return true;
  }

  // T_y = sum q_alpha(y) d^alpha
  OperatorSeries freeze(const std::vector<Rational>& y) const {
    OperatorSeries t(n_, order_);
    for (const auto& [alpha, q] : coeffs_) t.set_coefficient(alpha, Polynomial::constant(n_, q.eval(y)));
    return t;
  }

  friend bool operator==(const OperatorSeries& a, const OperatorSeries& b) {
    return a.n_ == b.n_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int n_;
  int order_;
  CoeffMap coeffs_;
};

// Recovers the unique canonical coefficients of a linear action on
// R[x]_{<=D} by graded induction over monomial probes.
inline OperatorSeries extract_canonical(const std::function<Polynomial(const Polynomial&)>& action, int n,
                                        int max_order) {
  OperatorSeries t(n, max_order);
  for (const auto& beta : multi_indices_up_to(n, max_order)) {
    Polynomial xb = Polynomial::monomial(beta);
    Polynomial residual = action(xb);
    for (const auto& [alpha, q] : t.coefficients()) {
      Polynomial da = xb.derive(alpha);
      if (!da.is_zero()) residual -= q * da;
    }
    residual *= frac(1, factorial(beta));
    t.set_coefficient(beta, residual);
  }
  return t;
}

// Diagonal operator data: Tx^alpha = t_alpha x^alpha together with the
// coefficient sequence c of T = sum c_alpha/alpha! x^alpha d^alpha.
struct DiagonalOperator {
  int n = 1;
  int order = 0;
  std::map<MultiIndex, Rational, GradedLex> t;
  std::map<MultiIndex, Rational, GradedLex> c;
};

struct NotDiagonal {
  MultiIndex violating_monomial;
};

using DiagonalResult = std::variant<DiagonalOperator, NotDiagonal>;

inline std::map<MultiIndex, Rational, GradedLex> t_from_c(
    const std::map<MultiIndex, Rational, GradedLex>& c, int n, int order) {
  std::map<MultiIndex, Rational, GradedLex> t;
  for (const auto& alpha : multi_indices_up_to(n, order)) {
    Rational acc = 0;
    for (const auto& beta : sub_indices(alpha)) {
      auto it = c.find(beta);
      if (it != c.end()) acc += Rational(binomial(alpha, beta)) * it->second;
    }
    t[alpha] = acc;
  }
  return t;
}

inline std::map<MultiIndex, Rational, GradedLex> c_from_t(
    const std::map<MultiIndex, Rational, GradedLex>& t, int n, int order) {
  std::map<MultiIndex, Rational, GradedLex> c;
  for (const auto& alpha : multi_indices_up_to(n, order)) {
    Rational acc = 0;
    for (const auto& beta : sub_indices(alpha)) {
      auto it = t.find(beta);
      if (it == t.end()) continue;
      Rational term = Rational(binomial(alpha, beta)) * it->second;
      if (order_of(sub(alpha, beta)) % 2) term = -term;
      acc += term;
    }
    c[alpha] = acc;
  }
  return c;
}

inline DiagonalResult to_diagonal(const OperatorSeries& t) {
  DiagonalOperator d;
  d.n = t.dimension();
  d.order = t.order();
  for (const auto& alpha : multi_indices_up_to(t.dimension(), t.order())) {
    Polynomial img = t.apply(Polynomial::monomial(alpha));
    Rational ta = img.coefficient(alpha);
    Polynomial diff = img - Polynomial::monomial(alpha, ta);
    if (!diff.is_zero()) return NotDiagonal{alpha};
    d.t[alpha] = ta;
  }
  d.c = c_from_t(d.t, d.n, d.order);
  return d;
}

}  // namespace polypreserve
