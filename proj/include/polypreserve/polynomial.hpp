#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "polypreserve/multi_index.hpp"
#include "polypreserve/rational.hpp"

namespace polypreserve {

// Multivariate polynomial over Q in canonical form: no zero coefficients
// stored, terms ordered graded-lexicographically.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, Rational, GradedLex>;

  explicit Polynomial(int n = 1) : n_(n) {
    if (n < 1) throw std::invalid_argument("polynomial dimension must be >= 1");
  }

  static Polynomial constant(int n, const Rational& c) {
    Polynomial p(n);
    p.set(zero_index(n), c);
    return p;
  }

  static Polynomial monomial(const MultiIndex& alpha, const Rational& c = 1) {
    Polynomial p(static_cast<int>(alpha.size()));
    p.set(alpha, c);
    return p;
  }

  static Polynomial variable(int n, int i, const Rational& c = 1) {
    return monomial(unit_index(n, i), c);
  }

  int dimension() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void set(const MultiIndex& alpha, const Rational& c) {
    if (static_cast<int>(alpha.size()) != n_) throw std::invalid_argument("multi-index dimension mismatch");
    if (c == 0)
      terms_.erase(alpha);
    else
      terms_[alpha] = c;
  }

  void add_term(const MultiIndex& alpha, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  // deg 0 = "minus infinity", encoded as nullopt.
  std::optional<int> degree() const {
    if (terms_.empty()) return std::nullopt;
    return order_of(terms_.rbegin()->first);
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial& operator+=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check_dim(o);
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [a, v] : terms_) v *= c;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_dim(b);
    Polynomial r(a.n_);
    for (const auto& [al, ca] : a.terms_)
      for (const auto& [be, cb] : b.terms_) r.add_term(add(al, be), ca * cb);
    return r;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(n_, 1);
    Polynomial b = *this;
    while (e) {
      if (e & 1u) r = r * b;
      if (e >>= 1) b = b * b;
    }
    return r;
  }

  Rational eval(const std::vector<Rational>& y) const {
    if (static_cast<int>(y.size()) != n_) throw std::invalid_argument("evaluation point dimension mismatch");
    Rational acc = 0;
    for (const auto& [a, c] : terms_) {
      Rational t = c;
      for (size_t i = 0; i < y.size(); ++i)
        if (a[i]) t *= rational_pow(y[i], static_cast<unsigned>(a[i]));
      acc += t;
    }
    return acc;
  }

  // Horner in the last variable, recursing over the leading block.
  double eval(const std::vector<double>& y) const {
    if (static_cast<int>(y.size()) != n_) throw std::invalid_argument("evaluation point dimension mismatch");
    std::vector<std::pair<MultiIndex, double>> flat;
    flat.reserve(terms_.size());
    for (const auto& [a, c] : terms_) flat.emplace_back(a, to_double(c));
    return eval_horner(flat, 0, flat.size(), 0, y);
  }

  Polynomial derive(const MultiIndex& alpha) const {
    if (static_cast<int>(alpha.size()) != n_) throw std::invalid_argument("derivative index dimension mismatch");
    Polynomial r(n_);
    for (const auto& [a, c] : terms_) {
      if (!divides(alpha, a)) continue;
      Rational f = c;
      MultiIndex b = a;
      for (size_t i = 0; i < a.size(); ++i) {
        for (int j = 0; j < alpha[i]; ++j) f *= (a[i] - j);
        b[i] = a[i] - alpha[i];
      }
      r.add_term(b, f);
    }
    return r;
  }

  // q with q(x) = p(x + y)
  Polynomial taylor_shift(const std::vector<Rational>& y) const {
    if (static_cast<int>(y.size()) != n_) throw std::invalid_argument("shift point dimension mismatch");
    Polynomial r = *this;
    for (size_t i = 0; i < y.size(); ++i)
      if (y[i] != 0) r = r.shift_one(static_cast<int>(i), y[i]);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << c.get_str();
      for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        os << "*x" << i;
        if (a[i] > 1) os << "^" << a[i];
      }
    }
    return os.str();
  }

 private:
  void check_dim(const Polynomial& o) const {
    if (n_ != o.n_) throw std::invalid_argument("polynomial dimension mismatch");
  }

  Polynomial shift_one(int var, const Rational& c) const {
    Polynomial r(n_);
    for (const auto& [a, coeff] : terms_) {
      int k = a[static_cast<size_t>(var)];
      for (int j = 0; j <= k; ++j) {
        MultiIndex b = a;
        b[static_cast<size_t>(var)] = j;
        r.add_term(b, coeff * Rational(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j))) *
                          rational_pow(c, static_cast<unsigned>(k - j)));
      }
    }
    return r;
  }

  static double eval_horner(const std::vector<std::pair<MultiIndex, double>>& flat, size_t lo, size_t hi,
                            size_t var, const std::vector<double>& y) {
    if (lo >= hi) return 0.0;
    if (var + 1 == y.size()) {
      // terms in flat[lo,hi) share exponents in vars < var; graded-lex keeps
      // the last variable ascending only within fixed prefix, so group first
      double acc = 0.0;
      int max_e = 0;
      for (size_t i = lo; i < hi; ++i) max_e = std::max(max_e, flat[i].first[var]);
      std::vector<double> dense(static_cast<size_t>(max_e) + 1, 0.0);
      for (size_t i = lo; i < hi; ++i) dense[static_cast<size_t>(flat[i].first[var])] += flat[i].second;
      for (size_t j = dense.size(); j-- > 0;) acc = acc * y[var] + dense[j];
      return acc;
    }
    // bucket by exponent of `var`
    std::map<int, std::vector<std::pair<MultiIndex, double>>> buckets;
    for (size_t i = lo; i < hi; ++i) buckets[flat[i].first[var]].push_back(flat[i]);
    int max_e = buckets.rbegin()->first;
    std::vector<double> dense(static_cast<size_t>(max_e) + 1, 0.0);
    for (auto& [e, grp] : buckets)
      dense[static_cast<size_t>(e)] = eval_horner(grp, 0, grp.size(), var + 1, y);
    double acc = 0.0;
    for (size_t j = dense.size(); j-- > 0;) acc = acc * y[var] + dense[j];
    return acc;
  }

  int n_;
  TermMap terms_;
};

inline std::vector<Rational> rational_point(std::initializer_list<long> xs) {
  std::vector<Rational> y;
  for (long v : xs) y.emplace_back(v);
  return y;
}

}  // namespace polypreserve
