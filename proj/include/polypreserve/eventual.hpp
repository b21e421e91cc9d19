#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polypreserve/linalg.hpp"
#include "polypreserve/rational.hpp"

namespace polypreserve {

// Finite exponential sum  sum_i c_i e^{r_i t}  with exact rational data;
// closed under differentiation, exact at t = 0.
struct ExpSum {
  struct Term {
    Rational coeff;
    Rational rate;
  };
  std::vector<Term> terms;

  void add(const Rational& coeff, const Rational& rate) {
    for (auto& t : terms) {
      if (t.rate == rate) {
        t.coeff += coeff;
        return;
      }
    }
    terms.push_back({coeff, rate});
  }

  double eval(double t) const {
    double acc = 0;
    for (const auto& term : terms) acc += to_double(term.coeff) * std::exp(to_double(term.rate) * t);
    return acc;
  }

  ExpSum derivative() const {
    ExpSum d;
    for (const auto& term : terms)
      if (term.coeff * term.rate != 0) d.add(term.coeff * term.rate, term.rate);
    return d;
  }

  Rational value_at_zero() const {
    Rational acc = 0;
    for (const auto& term : terms) acc += term.coeff;
    return acc;
  }
};

// det H_i(lambda(t)) for the diagonal semigroup lambda_k(t) = e^{t w(k)},
// expanded over permutations into an exact exponential sum.
inline ExpSum hankel_det_expsum(int order, const std::function<long(int)>& weight) {
  int m = order + 1;
  std::vector<int> perm(static_cast<size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  ExpSum det;
  do {
    // permutation sign by counting inversions
    int inversions = 0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (perm[static_cast<size_t>(i)] > perm[static_cast<size_t>(j)]) ++inversions;
    long rate = 0;
    for (int j = 0; j < m; ++j) rate += weight(j + perm[static_cast<size_t>(j)]);
    det.add(Rational(inversions % 2 ? -1 : 1), Rational(rate));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

enum class EventualClass { always, eventually, never };

inline const char* to_string(EventualClass c) {
  switch (c) {
    case EventualClass::always: return "always";
    case EventualClass::eventually: return "eventually";
    default: return "never";
  }
}

struct EventualReport {
  std::vector<std::pair<double, double>> samples;  // (t, criterion value)
  EventualClass classification = EventualClass::never;
  bool bracket_valid = false;
  double lo = 0, hi = 0;
  double criterion_lo = 0, criterion_hi = 0;
};

namespace detail {

// Brackets terminate at width ~1e-6 * t (clamped); the criterion functions
// here lose absolute accuracy at large t, so a fixed 1e-7 width would drop
// below the sign-resolution noise floor.
inline double bracket_width_target(double t) { return std::clamp(1e-6 * std::fabs(t), 1e-9, 1e-4); }

inline void bisect_sign_change(const std::function<double(double)>& f, double lo, double hi,
                               EventualReport& rep) {
  double flo = f(lo), fhi = f(hi);
  if (!(flo < 0 && fhi > 0)) return;
  while (hi - lo > bracket_width_target(hi)) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm < 0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  rep.bracket_valid = true;
  rep.lo = lo;
  rep.hi = hi;
  rep.criterion_lo = flo;
  rep.criterion_hi = fhi;
}

}  // namespace detail

// Smallest eigenvalue of H_i for the diagonal model, with the near-singular
// eigenvalue routed through the determinant closed form: sigma_min =
// det / (product of the larger eigenvalues), which survives the cancellation
// that the O(1) matrix entries cause.
class DiagonalEventualModel {
 public:
  explicit DiagonalEventualModel(int max_degree, std::function<long(int)> weight)
      : d_(max_degree), weight_(std::move(weight)) {
    for (int i = 0; 2 * i <= d_; ++i) dets_.push_back(hankel_det_expsum(i, weight_));
  }

  int orders() const { return static_cast<int>(dets_.size()); }
  const ExpSum& det(int order) const { return dets_[static_cast<size_t>(order)]; }

  double lambda(int k, double t) const { return std::exp(static_cast<double>(weight_(k)) * t); }

  double sigma_min(int order, double t) const {
    int m = order + 1;
    MatD h(static_cast<size_t>(m), static_cast<size_t>(m));
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) h(static_cast<size_t>(j), static_cast<size_t>(l)) = lambda(j + l, t);
    auto ev = symmetric_eigenvalues(h);
    double detv = dets_[static_cast<size_t>(order)].eval(t);
    double rest = 1;
    for (size_t i = 1; i < ev.size(); ++i) rest *= ev[i];
    if (rest != 0 && std::fabs(ev.front()) < 1e-3 * std::fabs(ev.back())) return detv / rest;
    return ev.front();
  }

  double criterion(double t) const {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < orders(); ++i) worst = std::min(worst, sigma_min(i, t));
    return worst;
  }

  // Sign change of the top-order determinant; lower orders stay positive for
  // t > 0 in this model.
  EventualReport analyze(double t_lo, double t_hi, int samples = 200) const {
    EventualReport rep;
    const ExpSum& top = dets_.back();
    for (int i = 0; i <= samples; ++i) {
      double t = t_lo + (t_hi - t_lo) * i / samples;
      rep.samples.emplace_back(t, sigma_min(orders() - 1, t));
    }
    double lo = t_lo, hi = t_hi;
    // find a sign bracket on the top determinant
    double prev_t = t_lo > 0 ? t_lo : 1e-6, prev_v = top.eval(prev_t);
    bool found = false;
    for (int i = 1; i <= samples; ++i) {
      double t = prev_t + (t_hi - prev_t) * i / samples;
      double v = top.eval(t);
      if (prev_v < 0 && v > 0) {
        lo = prev_t;
        hi = t;
        found = true;
        break;
      }
      prev_v = v;
      prev_t = t;
    }
    if (found) {
      detail::bisect_sign_change([&](double t) { return top.eval(t); }, lo, hi, rep);
      rep.classification = EventualClass::eventually;
    } else {
      rep.classification = prev_v > 0 ? EventualClass::always : EventualClass::never;
    }
    return rep;
  }

 private:
  int d_;
  std::function<long(int)> weight_;
  std::vector<ExpSum> dets_;
};

// The cubed-exponent model lambda_k(t) = e^{t k^3} on R[x]_{<=d}.
inline DiagonalEventualModel cubic_diagonal_model(int d = 4) {
  return DiagonalEventualModel(d, [](int k) { return static_cast<long>(k) * k * k; });
}

// ---- the quadratic-generator model ----------------------------------------

// m(a,t) = 1 - e^t + a^2 (5 + 8t + 4t^2 - (10 + 8t + t^2) e^t + 5 e^{2t}) / (e^t - 1)
// evaluated through expm1 and, for small t, through the exact Taylor
// expansion of the numerator (it has a fourth-order zero at t = 0).
namespace detail {

inline double quadratic_numerator(double t) {
  if (t < 0.5) {
    // N(t) = sum_{k>=4} c_k t^k, c_k = (5*2^k - 10)/k! - 8/(k-1)! - 1/(k-2)!
    double acc = 0;
    double tk = t * t * t * t;
    Integer pow2 = 16;
    for (int k = 4; k <= 34; ++k) {
      Rational ck = frac(5 * pow2 - 10, factorial(static_cast<unsigned>(k))) -
                    frac(8, factorial(static_cast<unsigned>(k - 1))) -
                    frac(1, factorial(static_cast<unsigned>(k - 2)));
      acc += to_double(ck) * tk;
      tk *= t;
      pow2 *= 2;
    }
    return acc;
  }
  double et = std::exp(t);
  return 5 + 8 * t + 4 * t * t - (10 + 8 * t + t * t) * et + 5 * et * et;
}

}  // namespace detail

// Grouped evaluation a^2 N(t) - expm1(t)^2 over expm1(t): collecting the
// e^{2t}, e^t, and constant parts first keeps the cancellation at the
// coefficient level (5a^2 - 1 is tiny near the threshold), so the boundary
// identity holds to ~1e-13 relative even at large t.
inline double quadratic_min(double a_squared, double t) {
  double em1 = std::expm1(t);
  if (t < 0.5) return -em1 + a_squared * detail::quadratic_numerator(t) / em1;
  double et = std::exp(t);
  double c0 = a_squared * (5 + 8 * t + 4 * t * t) - 1.0;
  double c1 = 2.0 - a_squared * (10 + 8 * t + t * t);
  double c2 = 5.0 * a_squared - 1.0;
  return (c0 + c1 * et + c2 * et * et) / em1;
}

inline double quadratic_min_for(double a, double t) { return quadratic_min(a * a, t); }

// Closed form of m at the threshold |a| = 1/sqrt(5).
inline double quadratic_min_boundary(double t) {
  double emt = std::exp(-t);
  return (4 * emt * t * (t + 2) - t * (t + 8)) / (5 - 5 * emt);
}

inline EventualReport eventual_quadratic(double a, double t_lo, double t_hi, int samples = 1000) {
  EventualReport rep;
  double a2 = a * a;
  auto f = [&](double t) { return quadratic_min(a2, t); };
  double start = std::max(t_lo, 1e-9);
  for (int i = 0; i <= samples; ++i) {
    double t = start + (t_hi - start) * i / samples;
    rep.samples.emplace_back(t, f(t));
  }
  if (a2 <= 0.2) {
    rep.classification = EventualClass::never;
    return rep;
  }
  double prev_t = start, prev_v = f(start);
  for (int i = 1; i <= samples * 4; ++i) {
    double t = start + (t_hi - start) * i / (samples * 4.0);
    double v = f(t);
    if (prev_v < 0 && v > 0) {
      detail::bisect_sign_change(f, prev_t, t, rep);
      rep.classification = EventualClass::eventually;
      return rep;
    }
    prev_t = t;
    prev_v = v;
  }
  // a^2 > 1/5 guarantees a threshold; it just lies beyond the sampled range
  rep.classification = EventualClass::eventually;
  return rep;
}

}  // namespace polypreserve
