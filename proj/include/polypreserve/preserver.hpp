#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polypreserve/const_series.hpp"
#include "polypreserve/levy.hpp"
#include "polypreserve/moment_checks.hpp"
#include "polypreserve/operator_series.hpp"
#include "polypreserve/parallel.hpp"

namespace polypreserve {

// K limited to the sets with complete 1D positivity descriptions: R^n,
// half-lines [a, oo)^(per axis), and boxes.
struct KDomain {
  enum class Kind { real_space, halfline, box };
  Kind kind = Kind::real_space;
  Rational a = 0;                 // halfline lower end, same on every axis
  std::vector<Rational> lo, hi;   // box

  static KDomain reals() { return KDomain{}; }
  static KDomain half(const Rational& a) {
    KDomain k;
    k.kind = Kind::halfline;
    k.a = a;
    return k;
  }
  static KDomain interval_box(std::vector<Rational> lo, std::vector<Rational> hi) {
    KDomain k;
    k.kind = Kind::box;
    k.lo = std::move(lo);
    k.hi = std::move(hi);
    return k;
  }

  bool contains(const std::vector<Rational>& y) const {
    switch (kind) {
      case Kind::real_space: return true;
      case Kind::halfline:
        for (const auto& v : y)
          if (v < a) return false;
        return true;
      case Kind::box:
        for (size_t i = 0; i < y.size(); ++i)
          if (y[i] < lo[i] || y[i] > hi[i]) return false;
        return true;
    }
    return false;
  }

  bool translation_invariant() const { return kind == Kind::real_space; }
};

struct CheckConfig {
  std::vector<std::vector<Rational>> grid;  // empty: Chebyshev-spread defaults
  int points_per_axis = 7;
  Rational default_radius = 2;
  double tol_factor = 1e-10;
};

struct PreserverWitness {
  std::vector<Rational> y;
  int axis = 0;          // marginal axis for n >= 2
  std::string family;    // "hankel", "shifted-hankel", "interval-difference"
  int hankel_order = -1;
  int diff_m = -1, diff_p = -1;
};

// pass means "no violation found up to the truncation order"; a fail carries
// a witness reproducible from the Hankel data.
struct PreserverVerdict {
  bool pass = true;
  bool borderline = false;
  bool necessary_only = true;
  std::string note;
  std::optional<PreserverWitness> witness;
};

namespace detail {

// Chebyshev-spread points in [lo, hi], kept rational for exact freezing.
inline std::vector<Rational> chebyshev_points(const Rational& lo, const Rational& hi, int m) {
  std::vector<Rational> pts;
  for (int j = 0; j < m; ++j) {
    double th = 3.14159265358979323846 * (2.0 * j + 1.0) / (2.0 * m);
    double u = std::cos(th);  // in (-1, 1)
    Rational ur = rational_reconstruct(u, 4096);
    pts.push_back(lo + (hi - lo) * (ur + 1) * frac(1, 2));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

inline std::vector<std::vector<Rational>> default_grid(const KDomain& k, int n, const CheckConfig& cfg) {
  Rational lo, hi;
  std::vector<std::vector<Rational>> axis_pts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    switch (k.kind) {
      case KDomain::Kind::real_space:
        lo = -cfg.default_radius;
        hi = cfg.default_radius;
        break;
      case KDomain::Kind::halfline:
        lo = k.a;
        hi = k.a + 2 * cfg.default_radius;
        break;
      case KDomain::Kind::box:
        lo = k.lo[static_cast<size_t>(i)];
        hi = k.hi[static_cast<size_t>(i)];
        break;
    }
    axis_pts[static_cast<size_t>(i)] = chebyshev_points(lo, hi, cfg.points_per_axis);
  }
  std::vector<std::vector<Rational>> grid;
  std::vector<size_t> idx(static_cast<size_t>(n), 0);
  for (;;) {
    std::vector<Rational> y(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) y[static_cast<size_t>(i)] = axis_pts[static_cast<size_t>(i)][idx[static_cast<size_t>(i)]];
    grid.push_back(y);
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[static_cast<size_t>(i)] < axis_pts[static_cast<size_t>(i)].size()) break;
      idx[static_cast<size_t>(i)] = 0;
    }
    if (i == n) break;
  }
  return grid;
}

struct PointOutcome {
  bool pass = true;
  bool borderline = false;
  PreserverWitness witness;
};

// 1D necessary-condition battery for one frozen sequence on K - y.
inline PointOutcome test_sequence_1d(const std::vector<Rational>& s, const KDomain& k, const Rational& y,
                                     double tol) {
  PointOutcome out;
  switch (k.kind) {
    case KDomain::Kind::real_space: {
      auto rep = hamburger_check(s, tol);
      out.pass = rep.pass;
      out.borderline = rep.borderline;
      if (!rep.pass) {
        out.witness.family = "hankel";
        out.witness.hankel_order = rep.first_fail_order;
      }
      break;
    }
    case KDomain::Kind::halfline: {
      std::vector<double> sd(s.size());
      for (size_t i = 0; i < s.size(); ++i) sd[i] = to_double(s[i]);
      auto rep = halfline_check(sd, to_double(k.a - y), tol);
      out.pass = rep.pass;
      out.borderline = rep.base.borderline || rep.shifted.borderline;
      if (!rep.base.pass) {
        out.witness.family = "hankel";
        out.witness.hankel_order = rep.base.first_fail_order;
      } else if (!rep.shifted.pass) {
        out.witness.family = "shifted-hankel";
        out.witness.hankel_order = rep.shifted.first_fail_order;
      }
      break;
    }
    case KDomain::Kind::box: {
      auto rep = hausdorff_check<Rational>(s, k.lo[0] - y, k.hi[0] - y);
      out.pass = rep.pass;
      if (!rep.pass) {
        out.witness.family = "interval-difference";
        out.witness.diff_m = rep.witness_m;
        out.witness.diff_p = rep.witness_p;
      }
      break;
    }
  }
  return out;
}

}  // namespace detail

// Main pointwise test: for each grid y, the sequence (alpha! q_alpha(y)) must
// satisfy the (K-y) truncated moment conditions. Hankel-complete for n = 1;
// axis marginals for n >= 2.
inline PreserverVerdict check_preserver(const OperatorSeries& t, const KDomain& k, const CheckConfig& cfg) {
  int n = t.dimension();
  if (k.kind == KDomain::Kind::box && (static_cast<int>(k.lo.size()) != n || static_cast<int>(k.hi.size()) != n))
    throw std::invalid_argument("box descriptor dimension mismatch");
  auto grid = cfg.grid.empty() ? detail::default_grid(k, n, cfg) : cfg.grid;
  if (grid.empty()) throw std::invalid_argument("empty sample grid");
  for (const auto& y : grid)
    if (!k.contains(y)) throw std::invalid_argument("grid point outside K");

  std::vector<std::vector<detail::PointOutcome>> outcomes(grid.size());
  parallel_for(grid.size(), [&](size_t gi) {
    const auto& y = grid[gi];
    std::vector<detail::PointOutcome> per_axis;
    for (int axis = 0; axis < n; ++axis) {
      std::vector<Rational> s;
      for (int kk = 0; kk <= t.order(); ++kk) {
        MultiIndex a = zero_index(n);
        a[static_cast<size_t>(axis)] = kk;
        s.push_back(Rational(factorial(a)) * t.coefficient(a).eval(y));
      }
      KDomain axis_k = k;
      if (k.kind == KDomain::Kind::box) {
        axis_k.lo = {k.lo[static_cast<size_t>(axis)]};
        axis_k.hi = {k.hi[static_cast<size_t>(axis)]};
      }
      auto out = detail::test_sequence_1d(s, axis_k, y[static_cast<size_t>(axis)], cfg.tol_factor);
      out.witness.y = y;
      out.witness.axis = axis;
      per_axis.push_back(out);
      if (n == 1) break;
    }
    outcomes[gi] = std::move(per_axis);
  });

  PreserverVerdict verdict;
  verdict.necessary_only = true;
  verdict.note = n == 1 ? "necessary conditions up to truncation order"
                        : "necessary conditions via axis marginals (n >= 2)";
  for (const auto& pt : outcomes) {
    for (const auto& out : pt) {
      verdict.borderline = verdict.borderline || out.borderline;
      if (!out.pass && !verdict.witness) {
        verdict.pass = false;
        verdict.witness = out.witness;
      }
    }
  }
  return verdict;
}

inline PreserverVerdict check_preserver(const ConstSeries& t, const KDomain& k, const CheckConfig& cfg) {
  return check_preserver(t.as_operator(), k, cfg);
}

// Diagonal preserver test (K = R^n): the diagonal sequence itself must be a
// moment sequence.
template <class T>
PreserverVerdict check_diagonal_preserver(const SequenceND<T>& diag, double tol_factor = 1e-10) {
  PreserverVerdict verdict;
  verdict.note = "diagonal sequence moment test (K = R^n)";
  for (int axis = 0; axis < diag.n; ++axis) {
    std::vector<double> s;
    for (int k = 0; k <= diag.order; ++k) {
      MultiIndex a = zero_index(diag.n);
      a[static_cast<size_t>(axis)] = k;
      if constexpr (std::is_same_v<T, Rational>)
        s.push_back(to_double(diag.at(a)));
      else
        s.push_back(diag.at(a));
    }
    auto rep = hamburger_check(s, tol_factor);
    verdict.borderline = verdict.borderline || rep.borderline;
    if (!rep.pass && verdict.pass) {
      verdict.pass = false;
      PreserverWitness w;
      w.axis = axis;
      w.family = "hankel";
      w.hankel_order = rep.first_fail_order;
      verdict.witness = w;
    }
  }
  return verdict;
}

// ---- resolvent test -------------------------------------------------------

struct ResolventEntry {
  Rational lambda = 0;
  bool singular = false;
  bool spectral_window = true;  // all eigenvalues of 1 - lambda*A positive
  PreserverVerdict verdict;
  bool pass = false;
};

struct ResolventReport {
  std::vector<ResolventEntry> entries;
  // sign change of the empirical window: last passing / first failing lambda
  std::optional<Rational> last_pass;
  std::optional<Rational> first_fail;
};

namespace detail {
inline MatQ operator_matrix(const OperatorSeries& a, int d, const std::vector<MultiIndex>& basis) {
  MatQ m(basis.size(), basis.size());
  for (size_t j = 0; j < basis.size(); ++j) {
    Polynomial img = a.apply(Polynomial::monomial(basis[j]));
    for (const auto& [alpha, c] : img.terms()) {
      auto it = std::lower_bound(basis.begin(), basis.end(), alpha, GradedLex{});
      if (it == basis.end() || *it != alpha) throw std::domain_error("operator leaves R[x]_{<=d}");
      m(static_cast<size_t>(it - basis.begin()), j) = c;
    }
  }
  (void)d;
  return m;
}
}  // namespace detail

// Per-lambda test of (1 - lambda A)^{-1} on R[x]_{<=d}: the inverse must exist,
// lambda must lie inside the spectral window of the Laplace-transform
// representation (all eigenvalues of 1 - lambda A positive), and the inverse
// operator must pass the pointwise moment test.
inline ResolventReport check_resolvent(const OperatorSeries& a, int d, const std::vector<Rational>& lambdas,
                                       const KDomain& k = KDomain::reals(), CheckConfig cfg = {}) {
  int n = a.dimension();
  if (!a.is_degree_preserving()) throw std::invalid_argument("resolvent test needs a degree-preserving operator");
  auto basis = multi_indices_up_to(n, d);
  MatQ amat = detail::operator_matrix(a, d, basis);

  ResolventReport report;
  for (const auto& lambda : lambdas) {
    ResolventEntry entry;
    entry.lambda = lambda;
    MatQ m = MatQ::identity(basis.size());
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) m(i, j) -= lambda * amat(i, j);

    if (n == 1) {
      // triangular in the graded monomial basis: eigenvalues on the diagonal
      for (size_t i = 0; i < basis.size(); ++i) {
        if (m(i, i) == 0) entry.singular = true;
        if (m(i, i) <= 0) entry.spectral_window = false;
      }
    } else {
      // Neumann bound as a sufficient window criterion
      double norm = 0;
      for (size_t i = 0; i < basis.size(); ++i) {
        double row = 0;
        for (size_t j = 0; j < basis.size(); ++j) row += std::fabs(to_double(lambda * amat(i, j)));
        norm = std::max(norm, row);
      }
      entry.spectral_window = norm < 1.0;
    }
    MatQ inv;
    if (!entry.singular && invert(m, inv)) {
      auto action = [&](const Polynomial& p) {
        std::vector<Rational> coords(basis.size(), Rational(0));
        for (const auto& [alpha, c] : p.terms()) {
          auto it = std::lower_bound(basis.begin(), basis.end(), alpha, GradedLex{});
          coords[static_cast<size_t>(it - basis.begin())] = c;
        }
        auto img = inv.apply(coords);
        Polynomial r(n);
        for (size_t i = 0; i < basis.size(); ++i) r.add_term(basis[i], img[i]);
        return r;
      };
      OperatorSeries resolvent = extract_canonical(action, n, d);
      entry.verdict = check_preserver(resolvent, k, cfg);
    } else {
      entry.singular = true;
    }
    entry.pass = !entry.singular && entry.spectral_window && entry.verdict.pass;
    if (entry.pass)
      report.last_pass = lambda;
    else if (!report.first_fail)
      report.first_fail = lambda;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

// Generator criterion: freeze the canonical coefficients at each grid point y
// and require the 1D tail conditions of the pointwise Levy-Khinchin data.
inline PreserverVerdict check_generator(const OperatorSeries& a, const KDomain& k, const CheckConfig& cfg) {
  if (!a.is_degree_preserving())
    throw std::invalid_argument("generator test needs deg a_alpha <= |alpha|");
  int n = a.dimension();
  auto grid = cfg.grid.empty() ? detail::default_grid(k, n, cfg) : cfg.grid;
  for (const auto& y : grid)
    if (!k.contains(y)) throw std::invalid_argument("grid point outside K");

  std::vector<std::vector<detail::PointOutcome>> outcomes(grid.size());
  parallel_for(grid.size(), [&](size_t gi) {
    const auto& y = grid[gi];
    std::vector<detail::PointOutcome> per_axis;
    for (int axis = 0; axis < n; ++axis) {
      std::vector<Rational> tail;
      for (int kk = 2; kk <= a.order(); ++kk) {
        MultiIndex al = zero_index(n);
        al[static_cast<size_t>(axis)] = kk;
        tail.push_back(Rational(factorial(al)) * a.coefficient(al).eval(y));
      }
      auto rep = hamburger_check(tail, cfg.tol_factor);
      detail::PointOutcome out;
      out.pass = rep.pass;
      out.borderline = rep.borderline;
      out.witness.y = y;
      out.witness.axis = axis;
      out.witness.family = "generator-tail";
      out.witness.hankel_order = rep.first_fail_order;
      per_axis.push_back(out);
      if (n == 1) break;
    }
    outcomes[gi] = std::move(per_axis);
  });

  PreserverVerdict verdict;
  verdict.necessary_only = true;
  verdict.note = k.translation_invariant()
                     ? "pointwise tail conditions (atomic Levy data: necessary at truncation)"
                     : "necessary only: K is not translation invariant";
  for (const auto& pt : outcomes) {
    for (const auto& out : pt) {
      verdict.borderline = verdict.borderline || out.borderline;
      if (!out.pass && !verdict.witness) {
        verdict.pass = false;
        verdict.witness = out.witness;
      }
    }
  }
  return verdict;
}

}  // namespace polypreserve
