#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "polypreserve/rational.hpp"

namespace polypreserve {

// Small dense matrices; everything here is desk-scale (dim <= a few dozen).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, T init = T(0)) : r_(rows), c_(cols), a_(rows * cols, init) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix z(x.r_, y.c_);
    for (size_t i = 0; i < x.r_; ++i)
      for (size_t k = 0; k < x.c_; ++k) {
        T v = x(i, k);
        if (v == T(0)) continue;
        for (size_t j = 0; j < y.c_; ++j) z(i, j) += v * y(k, j);
      }
    return z;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) {
    for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Matrix operator-(Matrix x, const Matrix& y) {
    for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend Matrix operator*(Matrix x, const T& s) {
    for (auto& v : x.a_) v *= s;
    return x;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != c_) throw std::invalid_argument("vector length mismatch");
    std::vector<T> w(r_, T(0));
    for (size_t i = 0; i < r_; ++i)
      for (size_t j = 0; j < c_; ++j) w[i] += (*this)(i, j) * v[j];
    return w;
  }

  bool is_zero() const {
    for (const auto& v : a_)
      if (!(v == T(0))) return false;
    return true;
  }

 private:
  size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using MatD = Matrix<double>;
using MatQ = Matrix<Rational>;

namespace detail {
inline double pivot_size(double x) { return std::fabs(x); }
inline double pivot_size(const Rational& x) { return std::fabs(to_double(x)); }
}  // namespace detail

// LU with partial pivoting. Returns false if (numerically) singular.
template <class T>
bool lu_decompose(Matrix<T> a, std::vector<size_t>& perm, Matrix<T>& lu, int& sign) {
  size_t n = a.rows();
  perm.resize(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  sign = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    double best = detail::pivot_size(a(k, k));
    for (size_t i = k + 1; i < n; ++i) {
      double s = detail::pivot_size(a(i, k));
      if (s > best) {
        best = s;
        piv = i;
      }
    }
    if (piv != k) {
      for (size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
      sign = -sign;
    }
    if (a(k, k) == T(0)) return false;
    for (size_t i = k + 1; i < n; ++i) {
      T f = a(i, k) / a(k, k);
      a(i, k) = f;
      if (f == T(0)) continue;
      for (size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  lu = a;
  return true;
}

template <class T>
std::vector<T> lu_solve(const Matrix<T>& lu, const std::vector<size_t>& perm, const std::vector<T>& b) {
  size_t n = lu.rows();
  std::vector<T> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
  for (size_t i = 1; i < n; ++i)
    for (size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
  for (size_t i = n; i-- > 0;) {
    for (size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
    x[i] /= lu(i, i);
  }
  return x;
}

template <class T>
bool solve(const Matrix<T>& a, const std::vector<T>& b, std::vector<T>& x) {
  std::vector<size_t> perm;
  Matrix<T> lu;
  int sign;
  if (!lu_decompose(a, perm, lu, sign)) return false;
  x = lu_solve(lu, perm, b);
  return true;
}

template <class T>
bool invert(const Matrix<T>& a, Matrix<T>& inv) {
  size_t n = a.rows();
  std::vector<size_t> perm;
  Matrix<T> lu;
  int sign;
  if (!lu_decompose(a, perm, lu, sign)) return false;
  inv = Matrix<T>(n, n);
  for (size_t j = 0; j < n; ++j) {
    std::vector<T> e(n, T(0));
    e[j] = T(1);
    auto col = lu_solve(lu, perm, e);
    for (size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return true;
}

template <class T>
T determinant(const Matrix<T>& a) {
  std::vector<size_t> perm;
  Matrix<T> lu;
  int sign;
  if (!lu_decompose(a, perm, lu, sign)) return T(0);
  T d(sign);
  for (size_t i = 0; i < a.rows(); ++i) d *= lu(i, i);
  return d;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> symmetric_eigenvalues(MatD a) {
  size_t n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-300) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline double inf_norm(const MatD& a) {
  double best = 0;
  for (size_t i = 0; i < a.rows(); ++i) {
    double row = 0;
    for (size_t j = 0; j < a.cols(); ++j) row += std::fabs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

// exp(M) by scaling and squaring with a Taylor kernel; nilpotent inputs are
// summed directly so that triangular group elements stay exact.
inline MatD matrix_exp(const MatD& m) {
  size_t n = m.rows();
  {
    MatD p = m;
    for (size_t k = 1; k <= n; ++k) {
      if (p.is_zero()) {
        MatD r = MatD::identity(n), term = MatD::identity(n);
        double fact = 1;
        for (size_t j = 1; j < k; ++j) {
          term = term * m;
          fact *= static_cast<double>(j);
          r = r + term * (1.0 / fact);
        }
        return r;
      }
      p = p * m;
    }
  }
  double norm = inf_norm(m);
  int s = 0;
  while (norm > 0.25) {
    norm /= 2;
    ++s;
  }
  MatD a = m * std::ldexp(1.0, -s);
  MatD r = MatD::identity(n), term = MatD::identity(n);
  for (int k = 1; k <= 18; ++k) {
    term = term * a * (1.0 / k);
    r = r + term;
  }
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

}  // namespace polypreserve
