#pragma once

#include <map>
#include <stdexcept>

#include "polypreserve/multi_index.hpp"
#include "polypreserve/operator_series.hpp"
#include "polypreserve/rational.hpp"
#include "polypreserve/sequences.hpp"

namespace polypreserve {

// Constant-coefficient operator sum c_alpha d^alpha truncated to R[x]_{<=d}.
// Group elements have c_0 = 1, algebra elements c_0 = 0.
class ConstSeries {
 public:
  using CoeffMap = std::map<MultiIndex, Rational, GradedLex>;

  ConstSeries(int n, int d) : n_(n), d_(d) {
    if (n < 1 || d < 0) throw std::invalid_argument("bad series dimensions");
  }

  static ConstSeries one(int n, int d) {
    ConstSeries s(n, d);
    s.set(zero_index(n), 1);
    return s;
  }

  static ConstSeries zero(int n, int d) { return ConstSeries(n, d); }

  int dimension() const { return n_; }
  int order() const { return d_; }
  const CoeffMap& coefficients() const { return coeffs_; }

  Rational at(const MultiIndex& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void set(const MultiIndex& alpha, const Rational& c) {
    if (static_cast<int>(alpha.size()) != n_) throw std::invalid_argument("multi-index dimension mismatch");
    if (order_of(alpha) > d_) throw std::invalid_argument("coefficient beyond truncation order");
    if (c == 0)
      coeffs_.erase(alpha);
    else
      coeffs_[alpha] = c;
  }

  bool is_group_element() const { return at(zero_index(n_)) == 1; }
  bool is_algebra_element() const { return at(zero_index(n_)) == 0; }

  ConstSeries restricted(int d) const {
    if (d > d_) throw std::invalid_argument("cannot extend truncation order");
    ConstSeries s(n_, d);
    for (const auto& [a, c] : coeffs_)
      if (order_of(a) <= d) s.coeffs_[a] = c;
    return s;
  }

  friend bool operator==(const ConstSeries& a, const ConstSeries& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.coeffs_ == b.coeffs_;
  }

  ConstSeries& operator+=(const ConstSeries& o) {
    check_compatible(o);
    for (const auto& [a, c] : o.coeffs_) {
      auto [it, inserted] = coeffs_.try_emplace(a, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
      }
    }
    return *this;
  }
  friend ConstSeries operator+(ConstSeries a, const ConstSeries& b) { return a += b; }

  ConstSeries& operator*=(const Rational& c) {
    if (c == 0)
      coeffs_.clear();
    else
      for (auto& [a, v] : coeffs_) v *= c;
    return *this;
  }
  friend ConstSeries operator*(ConstSeries a, const Rational& c) { return a *= c; }
  friend ConstSeries operator*(const Rational& c, ConstSeries a) { return a *= c; }
  friend ConstSeries operator-(ConstSeries a) { return a *= Rational(-1); }
  friend ConstSeries operator-(ConstSeries a, const ConstSeries& b) { return a += -b; }

  // Cauchy product truncated at |gamma| <= d.
  friend ConstSeries operator*(const ConstSeries& a, const ConstSeries& b) {
    a.check_compatible(b);
    ConstSeries r(a.n_, a.d_);
    for (const auto& [al, ca] : a.coeffs_) {
      int room = a.d_ - order_of(al);
      for (const auto& [be, cb] : b.coeffs_) {
        if (order_of(be) > room) continue;
        MultiIndex g = add(al, be);
        auto [it, inserted] = r.coeffs_.try_emplace(g, ca * cb);
        if (!inserted) {
          it->second += ca * cb;
          if (it->second == 0) r.coeffs_.erase(it);
        }
      }
    }
    return r;
  }

  OperatorSeries as_operator() const {
    OperatorSeries t(n_, d_);
    for (const auto& [a, c] : coeffs_) t.set_coefficient(a, Polynomial::constant(n_, c));
    return t;
  }

  Polynomial apply(const Polynomial& p) const { return as_operator().apply(p); }

 private:
  void check_compatible(const ConstSeries& o) const {
    if (n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("dimension/order mismatch");
  }

  int n_;
  int d_;
  CoeffMap coeffs_;
};

// Group elements have c_0 = 1 and algebra elements c_0 = 0; the operations
// below enforce the invariants.
using CGroupElement = ConstSeries;
using CAlgebraElement = ConstSeries;

// Unique B with A*B = 1, by graded recursion on the coefficients.
inline ConstSeries inverse(const ConstSeries& a) {
  if (!a.is_group_element()) throw std::domain_error("inverse requires constant term 1");
  int n = a.dimension(), d = a.order();
  ConstSeries b = ConstSeries::one(n, d);
  for (const auto& gamma : multi_indices_up_to(n, d)) {
    if (order_of(gamma) == 0) continue;
    Rational acc = 0;
    for (const auto& alpha : sub_indices(gamma)) {
      if (order_of(alpha) == 0) continue;
      Rational ca = a.at(alpha);
      if (ca == 0) continue;
      acc += ca * b.at(sub(gamma, alpha));
    }
    b.set(gamma, -acc);
  }
  return b;
}

// exp A = sum_{k=0}^d A^k / k!; exact since A has no constant term.
inline ConstSeries exp_series(const ConstSeries& a) {
  if (!a.is_algebra_element()) throw std::domain_error("exp requires constant term 0");
  int d = a.order();
  ConstSeries r = ConstSeries::one(a.dimension(), d);
  ConstSeries p = ConstSeries::one(a.dimension(), d);
  for (int k = 1; k <= d; ++k) {
    p = p * a;
    r += p * frac(1, factorial(static_cast<unsigned>(k)));
  }
  return r;
}

// log A = -sum_{k=1}^d (1-A)^k / k.
inline ConstSeries log_series(const ConstSeries& a) {
  if (!a.is_group_element()) throw std::domain_error("log requires constant term 1");
  int d = a.order();
  ConstSeries nil = ConstSeries::one(a.dimension(), d) - a;
  ConstSeries r = ConstSeries::zero(a.dimension(), d);
  ConstSeries p = ConstSeries::one(a.dimension(), d);
  for (int k = 1; k <= d; ++k) {
    p = p * nil;
    r += p * frac(-1, k);
  }
  return r;
}

// D(s) = sum s_alpha / alpha! d^alpha.
inline ConstSeries from_sequence(const SequenceND<Rational>& s, int d) {
  if (s.order < d) throw std::invalid_argument("sequence shorter than requested order");
  ConstSeries r(s.n, d);
  for (const auto& [a, v] : s.values)
    if (order_of(a) <= d) r.set(a, v * frac(1, factorial(a)));
  return r;
}

}  // namespace polypreserve
