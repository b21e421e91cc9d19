#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polypreserve/polynomial.hpp"
#include "polypreserve/roots.hpp"

namespace polypreserve {

// ---- Bernstein -------------------------------------------------------------

// B_{f,d}(x) = sum_k binom(d,k) x^k (1-x)^{d-k} f(k/d), exact over Q.
inline Polynomial bernstein_poly(const Polynomial& f, int d) {
  if (f.dimension() != 1) throw std::invalid_argument("bernstein_poly is univariate");
  if (d < 1) throw std::invalid_argument("degree must be >= 1");
  Polynomial x = Polynomial::variable(1, 0);
  Polynomial one_minus_x = Polynomial::constant(1, 1) - x;
  Polynomial acc(1);
  for (int k = 0; k <= d; ++k) {
    Rational fk = f.eval({frac(k, d)});
    if (fk == 0) continue;
    acc += x.pow(static_cast<unsigned>(k)) * one_minus_x.pow(static_cast<unsigned>(d - k)) *
           (fk * Rational(binomial(static_cast<unsigned>(d), static_cast<unsigned>(k))));
  }
  return acc;
}

// Nonnegative combination of x^k (1-x)^l reconstructing f exactly.
struct BernsteinCert {
  int degree = 0;
  std::map<std::pair<int, int>, Rational> coeffs;  // (k, l) -> c_{k,l} >= 0
};

struct BernsteinRefusal {
  bool negative_witness = false;  // else: unknown past the degree cap
  Rational witness = 0;
  int degree_cap = 0;
};

using BernsteinResult = std::variant<BernsteinCert, BernsteinRefusal>;

// Coefficients of f in the degree-D Bernstein basis: c_k = sum_j a_j C(k,j)/C(D,j).
inline std::vector<Rational> bernstein_coefficients(const Polynomial& f, int d) {
  std::vector<Rational> a(static_cast<size_t>(d) + 1, Rational(0));
  for (const auto& [alpha, c] : f.terms()) a[static_cast<size_t>(alpha[0])] = c;
  std::vector<Rational> cfs(static_cast<size_t>(d) + 1, Rational(0));
  for (int k = 0; k <= d; ++k) {
    Rational acc = 0;
    for (int j = 0; j <= k; ++j) {
      if (a[static_cast<size_t>(j)] == 0) continue;
      acc += a[static_cast<size_t>(j)] *
             frac(binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)),
                  binomial(static_cast<unsigned>(d), static_cast<unsigned>(j)));
    }
    cfs[static_cast<size_t>(k)] = acc;
  }
  return cfs;
}

inline BernsteinResult bernstein_certificate(const Polynomial& f, int degree_cap = 200) {
  if (f.dimension() != 1) throw std::invalid_argument("bernstein_certificate is univariate");
  auto deg = f.degree();
  if (!deg) return BernsteinRefusal{true, Rational(0), degree_cap};
  // quick negativity scan: a sampled negative value refutes immediately
  for (int i = 0; i <= 200; ++i) {
    Rational x = frac(i, 200);
    if (f.eval({x}) < 0) return BernsteinRefusal{true, x, degree_cap};
  }
  for (int d = std::max(*deg, 1); d <= degree_cap; ++d) {
    auto cfs = bernstein_coefficients(f, d);
    bool ok = true;
    for (const auto& c : cfs)
      if (c < 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    BernsteinCert cert;
    cert.degree = d;
    for (int k = 0; k <= d; ++k) {
      Rational c = cfs[static_cast<size_t>(k)] * Rational(binomial(static_cast<unsigned>(d), static_cast<unsigned>(k)));
      if (c != 0) cert.coeffs[{k, d - k}] = c;
    }
    return cert;
  }
  return BernsteinRefusal{false, Rational(0), degree_cap};
}

// ---- dense 1D double polynomials (certificate internals) -------------------

namespace poly1 {

using P = std::vector<double>;  // ascending coefficients

inline P trim(P p, double tol = 0.0) {
  while (p.size() > 1 && std::fabs(p.back()) <= tol) p.pop_back();
  if (p.size() == 1 && std::fabs(p[0]) <= tol) p[0] = 0;
  return p;
}

inline int degree(const P& p) {
  for (size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

inline double eval(const P& p, double x) {
  double acc = 0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline P mul(const P& a, const P& b) {
  if (a.empty() || b.empty()) return {0.0};
  P r(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline P add(P a, const P& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline P scale(P a, double s) {
  for (auto& v : a) v *= s;
  return a;
}

inline P sub(const P& a, const P& b) { return add(a, scale(b, -1.0)); }

inline P from_polynomial(const Polynomial& p) {
  auto d = p.degree();
  P out(static_cast<size_t>(d ? *d : 0) + 1, 0.0);
  for (const auto& [alpha, c] : p.terms()) out[static_cast<size_t>(alpha[0])] = to_double(c);
  return out;
}

}  // namespace poly1

// ---- weighted-square certificates ------------------------------------------

struct SosCert {
  enum class Form { sum_two_squares, even_interval, odd_interval };
  Form form = Form::sum_two_squares;
  poly1::P f, g;
  double a = 0, b = 0;
  double residual = 0;  // max |p - reconstruction| over the report grid
  bool exact = false;   // rational reconstruction verified exactly
};

struct CertRefusal {
  std::string reason;
  double witness = 0;
};

using SosResult = std::variant<SosCert, CertRefusal>;

namespace detail_cert {

inline double grid_min(const poly1::P& p, double lo, double hi, double& argmin) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 2000; ++i) {
    double x = lo + (hi - lo) * i / 2000.0;
    double v = poly1::eval(p, x);
    if (v < best) {
      best = v;
      argmin = x;
    }
  }
  return best;
}

inline double scale_of(const poly1::P& p) {
  double s = 0;
  for (double c : p) s = std::max(s, std::fabs(c));
  return std::max(s, 1.0);
}

// reconstruction residual of p against f^2 + w*g^2 style data
inline double reconstruction_residual(const poly1::P& p, const poly1::P& recon, double lo, double hi) {
  double worst = 0;
  for (int i = 0; i <= 1000; ++i) {
    double x = lo + (hi - lo) * i / 1000.0;
    worst = std::max(worst, std::fabs(poly1::eval(p, x) - poly1::eval(recon, x)));
  }
  return worst;
}

// Try to certify a numeric decomposition exactly over Q.
inline bool exact_square_identity(const Polynomial& p, const poly1::P& f, const poly1::P& g,
                                  const Polynomial& weight_f, const Polynomial& weight_g) {
  auto lift = [](const poly1::P& q) {
    Polynomial out(1);
    for (size_t i = 0; i < q.size(); ++i) {
      Rational c = rational_reconstruct(q[i]);
      if (std::fabs(to_double(c) - q[i]) > 1e-12 * (1.0 + std::fabs(q[i]))) return std::optional<Polynomial>{};
      out.add_term(MultiIndex{static_cast<int>(i)}, c);
    }
    return std::optional<Polynomial>{out};
  };
  auto fq = lift(f), gq = lift(g);
  if (!fq || !gq) return false;
  return weight_f * (*fq) * (*fq) + weight_g * (*gq) * (*gq) == p;
}

}  // namespace detail_cert

// p >= 0 on R as f^2 + g^2 via conjugate-pair splitting of the complex roots.
inline SosResult sos_decompose_R(const Polynomial& p) {
  if (p.dimension() != 1) throw std::invalid_argument("sos_decompose_R is univariate");
  poly1::P pd = poly1::from_polynomial(p);
  int n = poly1::degree(pd);
  if (n < 0) return SosCert{SosCert::Form::sum_two_squares, {0.0}, {0.0}, 0, 0, 0.0, true};
  if (n % 2) return CertRefusal{"odd degree cannot be nonnegative on R", 0};
  if (pd.back() <= 0) return CertRefusal{"leading coefficient not positive", 0};
  double argmin = 0;
  double mn = detail_cert::grid_min(pd, -3, 3, argmin);
  if (mn < -1e-9 * detail_cert::scale_of(pd)) return CertRefusal{"negative on sample grid", argmin};

  auto roots = polynomial_roots(pd);
  double scale = 0;
  for (const auto& z : roots) scale = std::max(scale, std::abs(z));
  scale = std::max(scale, 1.0);
  std::vector<Complex> upper;
  std::vector<double> reals;
  for (const auto& z : roots) {
    if (std::fabs(z.imag()) > 1e-7 * scale) {
      if (z.imag() > 0) upper.push_back(z);
    } else {
      reals.push_back(z.real());
    }
  }
  std::sort(reals.begin(), reals.end());
  std::vector<double> half_reals;
  for (size_t i = 0; i + 1 < reals.size();) {
    if (std::fabs(reals[i + 1] - reals[i]) <= 1e-5 * scale) {
      half_reals.push_back(0.5 * (reals[i] + reals[i + 1]));
      i += 2;
    } else {
      return CertRefusal{"real root of odd multiplicity", reals[i]};
    }
  }
  if (reals.size() % 2) return CertRefusal{"real root of odd multiplicity", reals.back()};

  std::vector<Complex> acc{Complex(std::sqrt(pd.back()), 0.0)};
  auto mul_factor = [&acc](Complex z) {
    std::vector<Complex> r(acc.size() + 1, Complex(0, 0));
    for (size_t i = 0; i < acc.size(); ++i) {
      r[i + 1] += acc[i];
      r[i] -= acc[i] * z;
    }
    acc = std::move(r);
  };
  for (const auto& z : upper) mul_factor(z);
  for (double r : half_reals) mul_factor(Complex(r, 0.0));

  SosCert cert;
  cert.form = SosCert::Form::sum_two_squares;
  cert.f.resize(acc.size());
  cert.g.resize(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) {
    cert.f[i] = acc[i].real();
    cert.g[i] = acc[i].imag();
  }
  cert.f = poly1::trim(cert.f, 0.0);
  cert.g = poly1::trim(cert.g, 0.0);
  poly1::P recon = poly1::add(poly1::mul(cert.f, cert.f), poly1::mul(cert.g, cert.g));
  cert.residual = detail_cert::reconstruction_residual(pd, recon, -2, 2);
  cert.exact = detail_cert::exact_square_identity(p, cert.f, cert.g, Polynomial::constant(1, 1),
                                                  Polynomial::constant(1, 1));
  return cert;
}

namespace detail_cert {

// (U, V, parity) composition state: parity even means U^2 + w V^2 with
// w = (x-a)(b-x); parity odd means (x-a) U^2 + (b-x) V^2.
struct WeightedPair {
  poly1::P u{1.0};
  poly1::P v{0.0};
  bool odd = false;
};

struct IntervalCtx {
  double a, b;
  poly1::P w;        // (x-a)(b-x)
  poly1::P x_min_a;  // (x-a)
  poly1::P b_min_x;  // (b-x)
};

inline void mul_even_block(WeightedPair& s, const poly1::P& f, const poly1::P& g, const IntervalCtx& c) {
  poly1::P u2, v2;
  if (!s.odd) {
    u2 = poly1::sub(poly1::mul(s.u, f), poly1::mul(c.w, poly1::mul(s.v, g)));
    v2 = poly1::add(poly1::mul(s.u, g), poly1::mul(s.v, f));
  } else {
    u2 = poly1::sub(poly1::mul(s.u, f), poly1::mul(c.b_min_x, poly1::mul(s.v, g)));
    v2 = poly1::add(poly1::mul(s.v, f), poly1::mul(c.x_min_a, poly1::mul(s.u, g)));
  }
  s.u = std::move(u2);
  s.v = std::move(v2);
}

inline void mul_odd_block(WeightedPair& s, double f0, double g0, const IntervalCtx& c) {
  poly1::P u2, v2;
  if (!s.odd) {
    u2 = poly1::sub(poly1::scale(s.u, f0), poly1::mul(c.b_min_x, poly1::scale(s.v, g0)));
    v2 = poly1::add(poly1::scale(s.u, g0), poly1::mul(c.x_min_a, poly1::scale(s.v, f0)));
  } else {
    u2 = poly1::sub(poly1::mul(c.x_min_a, poly1::scale(s.u, f0)), poly1::mul(c.b_min_x, poly1::scale(s.v, g0)));
    v2 = poly1::add(poly1::scale(s.u, g0), poly1::scale(s.v, f0));
  }
  s.odd = !s.odd;
  s.u = std::move(u2);
  s.v = std::move(v2);
}

// Quadratic block q (nonnegative on [a,b]) as f^2 + w g^2 with deg f <= 1 and
// g constant. f interpolates +-sqrt(q) at the endpoints; the leftover
// q - f^2 vanishes at a and b, so it is lambda * w; the endpoint sign choice
// makes lambda >= 0.
inline bool even_quadratic_block(const poly1::P& q, const IntervalCtx& c, poly1::P& f, double& g) {
  double qa = poly1::eval(q, c.a), qb = poly1::eval(q, c.b);
  qa = std::max(qa, 0.0);
  qb = std::max(qb, 0.0);
  double ra = std::sqrt(qa), rb = std::sqrt(qb);
  double lead = q.size() >= 3 ? q[2] : 0.0;
  for (int choice = 0; choice < 2; ++choice) {
    double fa = ra, fb = choice ? rb : -rb;
    double f1 = (fb - fa) / (c.b - c.a);
    double f0 = fa - f1 * c.a;
    double lambda = f1 * f1 - lead;  // x^2 coefficient of f^2 - q equals -lambda * (-1)
    if (lambda >= -1e-12 * std::max(1.0, std::fabs(lead))) {
      f = {f0, f1};
      g = std::sqrt(std::max(lambda, 0.0));
      return true;
    }
  }
  return false;
}

}  // namespace detail_cert

// Degree-sharp certificate on [a,b]: even degree 2m gives f^2 + (x-a)(b-x) g^2
// with deg f <= m, deg g <= m-1; odd degree gives (x-a) f^2 + (b-x) g^2 with
// deg f, deg g <= m. Built by root classification and block composition.
inline SosResult lukacs_markov(const Polynomial& p, double a, double b) {
  if (p.dimension() != 1) throw std::invalid_argument("lukacs_markov is univariate");
  if (!(a < b)) throw std::invalid_argument("empty interval");
  poly1::P pd = poly1::from_polynomial(p);
  int n = poly1::degree(pd);
  detail_cert::IntervalCtx ctx{a, b, {}, {-a, 1.0}, {b, -1.0}};
  ctx.w = poly1::mul(ctx.x_min_a, ctx.b_min_x);

  double argmin = 0;
  double mn = detail_cert::grid_min(pd, a, b, argmin);
  if (mn < -1e-9 * detail_cert::scale_of(pd)) return CertRefusal{"negative on [a,b] sample grid", argmin};
  if (n <= 0) {
    double c = n < 0 ? 0.0 : pd[0];
    if (c < 0) return CertRefusal{"negative constant", a};
    SosCert cert;
    cert.form = SosCert::Form::even_interval;
    cert.f = {std::sqrt(c)};
    cert.g = {0.0};
    cert.a = a;
    cert.b = b;
    cert.exact = detail_cert::exact_square_identity(p, cert.f, cert.g, Polynomial::constant(1, 1),
                                                    Polynomial(1));
    return cert;
  }

  auto roots = polynomial_roots(pd);
  double scale = std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
  for (const auto& z : roots) scale = std::max(scale, std::abs(z));
  std::vector<Complex> upper;
  std::vector<double> reals;
  for (const auto& z : roots) {
    if (std::fabs(z.imag()) > 1e-7 * scale) {
      if (z.imag() > 0) upper.push_back(z);
    } else {
      reals.push_back(z.real());
    }
  }
  std::sort(reals.begin(), reals.end());

  double edge = 1e-7 * scale;
  std::vector<double> interior, outer;
  for (double r : reals) {
    if (r > a + edge && r < b - edge)
      interior.push_back(r);
    else
      outer.push_back(r);
  }
  // interior roots must pair into even multiplicities
  std::vector<double> interior_pairs;
  for (size_t i = 0; i + 1 < interior.size();) {
    if (std::fabs(interior[i + 1] - interior[i]) <= 1e-5 * scale) {
      interior_pairs.push_back(0.5 * (interior[i] + interior[i + 1]));
      i += 2;
    } else {
      return CertRefusal{"interior root of odd multiplicity", interior[i]};
    }
  }
  if (interior.size() % 2) return CertRefusal{"interior root of odd multiplicity", interior.back()};

  bool odd_case = (n % 2) == 1;
  std::optional<double> lone_root;
  if (outer.size() % 2) {
    if (!odd_case) return CertRefusal{"unpaired real root in even-degree input", outer.back()};
    lone_root = outer.back();
    outer.pop_back();
  } else if (odd_case) {
    return CertRefusal{"odd-degree input without a free linear factor", a};
  }

  // scalar in front: lead * product of block sign flips must be positive
  detail_cert::WeightedPair state;
  double scalar = pd.back();
  std::vector<std::pair<poly1::P, double>> even_blocks;  // (f linear, g const)
  auto add_quadratic = [&](const poly1::P& q) -> bool {
    poly1::P f;
    double g;
    if (!detail_cert::even_quadratic_block(q, ctx, f, g)) return false;
    even_blocks.emplace_back(f, g);
    return true;
  };

  for (const auto& z : upper) {
    poly1::P q{z.real() * z.real() + z.imag() * z.imag(), -2.0 * z.real(), 1.0};
    if (!add_quadratic(q)) return CertRefusal{"block conversion failed", z.real()};
  }
  for (double r : interior_pairs) even_blocks.emplace_back(poly1::P{-r, 1.0}, 0.0);
  for (size_t i = 0; i + 1 < outer.size(); i += 2) {
    double r1 = outer[i], r2 = outer[i + 1];
    poly1::P q{r1 * r2, -(r1 + r2), 1.0};
    double mid = poly1::eval(q, 0.5 * (a + b));
    if (mid < 0) {
      q = poly1::scale(q, -1.0);
      scalar = -scalar;
    }
    if (!add_quadratic(q)) return CertRefusal{"block conversion failed", r1};
  }

  double lone_f0 = 0, lone_g0 = 0;
  if (lone_root) {
    double r = *lone_root;
    if (r <= a + edge) {
      // block (x - r) = (x-a) f0^2 + (b-x) g0^2
      lone_f0 = std::sqrt((b - r) / (b - a));
      lone_g0 = std::sqrt(std::max(0.0, (a - r) / (b - a)));
    } else {
      // block (r - x) = -(x - r)
      lone_f0 = std::sqrt(std::max(0.0, (r - b) / (b - a)));
      lone_g0 = std::sqrt((r - a) / (b - a));
      scalar = -scalar;
    }
  }
  if (scalar < 0) return CertRefusal{"inconsistent sign structure", a};

  state.u = {std::sqrt(scalar)};
  state.v = {0.0};
  for (const auto& [f, g] : even_blocks) detail_cert::mul_even_block(state, f, {g}, ctx);
  if (lone_root) detail_cert::mul_odd_block(state, lone_f0, lone_g0, ctx);

  SosCert cert;
  cert.a = a;
  cert.b = b;
  double tol = 1e-11 * detail_cert::scale_of(pd);
  cert.f = poly1::trim(state.u, tol);
  cert.g = poly1::trim(state.v, tol);
  cert.form = state.odd ? SosCert::Form::odd_interval : SosCert::Form::even_interval;
  poly1::P recon;
  if (state.odd)
    recon = poly1::add(poly1::mul(ctx.x_min_a, poly1::mul(cert.f, cert.f)),
                       poly1::mul(ctx.b_min_x, poly1::mul(cert.g, cert.g)));
  else
    recon = poly1::add(poly1::mul(cert.f, cert.f), poly1::mul(ctx.w, poly1::mul(cert.g, cert.g)));
  cert.residual = detail_cert::reconstruction_residual(pd, recon, a, b);
  {
    Polynomial xa = Polynomial::variable(1, 0) - Polynomial::constant(1, rational_reconstruct(a));
    Polynomial bx = Polynomial::constant(1, rational_reconstruct(b)) - Polynomial::variable(1, 0);
    if (state.odd)
      cert.exact = detail_cert::exact_square_identity(p, cert.f, cert.g, xa, bx);
    else
      cert.exact = detail_cert::exact_square_identity(p, cert.f, cert.g, Polynomial::constant(1, 1), xa * bx);
  }
  return cert;
}

}  // namespace polypreserve
