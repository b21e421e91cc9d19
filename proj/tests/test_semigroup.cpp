#include <doctest.h>

#include <cmath>

#include "polypreserve/const_series.hpp"
#include "polypreserve/semigroup.hpp"
#include "test_helpers.hpp"

using namespace polypreserve;

namespace {

PolyAction derivative_action() {
  return [](const Polynomial& p) { return p.derive({1}); };
}

// even/odd shift pair: A fixes even monomials and bumps odd ones; B the
// mirror image
PolyAction shift_a() {
  return [](const Polynomial& p) {
    Polynomial out(1);
    for (const auto& [al, c] : p.terms()) {
      int k = al[0];
      out.add_term(MultiIndex{k % 2 == 0 ? k : k + 1}, c);
    }
    return out;
  };
}

PolyAction shift_b() {
  return [](const Polynomial& p) {
    Polynomial out(1);
    for (const auto& [al, c] : p.terms()) {
      int k = al[0];
      out.add_term(MultiIndex{k % 2 == 0 ? k + 1 : k}, c);
    }
    return out;
  };
}

}  // namespace

TEST_CASE("derivative chain stabilizes to the full degree block") {
  for (int d = 1; d <= 5; ++d) {
    auto chain = fd_membership(derivative_action(), MultiIndex{d}, 50);
    CHECK(chain.stabilized);
    CHECK(chain.stabilization_index == d);
    CHECK(static_cast<int>(chain.basis.size()) == d + 1);  // R[x]_{<= d}
  }
}

TEST_CASE("shift operators stabilize but their sums and products do not") {
  auto a = shift_a();
  auto b = shift_b();
  CHECK(fd_membership(a, MultiIndex{6}, 40).stabilized);
  CHECK(fd_membership(a, MultiIndex{7}, 40).stabilized);
  CHECK(fd_membership(b, MultiIndex{6}, 40).stabilized);

  auto apb = [&](const Polynomial& p) { return a(p) + b(p); };
  auto ab = [&](const Polynomial& p) { return a(b(p)); };
  auto ba = [&](const Polynomial& p) { return b(a(p)); };
  auto comm = [&](const Polynomial& p) { return a(b(p)) - b(a(p)); };
  CHECK(!build_invariant_chain(apb, {Polynomial::monomial(MultiIndex{1})}, 40).stabilized);
  CHECK(!build_invariant_chain(ab, {Polynomial::monomial(MultiIndex{2})}, 40).stabilized);
  CHECK(!build_invariant_chain(ba, {Polynomial::monomial(MultiIndex{2})}, 40).stabilized);
  CHECK(!build_invariant_chain(comm, {Polynomial::monomial(MultiIndex{2})}, 40).stabilized);
  CHECK(build_invariant_chain(apb, {Polynomial::monomial(MultiIndex{1})}, 40).offending_power > 0);
}

TEST_CASE("square-zero operators stabilize in two steps") {
  // maps x^{2m} (m >= 1) to a prime-exponent monomial, everything else to 0
  auto prime_target = [](const Polynomial& p) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    Polynomial out(1);
    for (const auto& [al, c] : p.terms()) {
      int k = al[0];
      if (k >= 2 && k % 2 == 0) out.add_term(MultiIndex{primes[k / 2]}, c);
    }
    return out;
  };
  auto chain = fd_membership(prime_target, MultiIndex{4}, 100);
  CHECK(chain.stabilized);
  CHECK(chain.stabilization_index <= 2);
}

TEST_CASE("matrix exponential properties") {
  CHECK(matrix_exp(MatD(3, 3)).is_zero() == false);
  MatD zero(3, 3);
  MatD id = matrix_exp(zero);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) CHECK(id(i, j) == (i == j ? 1.0 : 0.0));

  // nilpotent strictly-upper 4x4 from the d=3 constant-coefficient group
  double a1 = 0.5, a2 = -1.25, a3 = 2.0;
  MatD n(4, 4);
  n(0, 1) = a1;
  n(0, 2) = 2 * a2;
  n(0, 3) = 6 * a3;
  n(1, 2) = 2 * a1;
  n(1, 3) = 6 * a2;
  n(2, 3) = 3 * a1;
  MatD en = matrix_exp(n);
  // compare against the truncated exponential of the corresponding algebra elt
  ConstSeries alg = ConstSeries::zero(1, 3);
  alg.set({1}, frac(1, 2));
  alg.set({2}, frac(-5, 4));
  alg.set({3}, Rational(2));
  ConstSeries eg = exp_series(alg);
  // first row of en holds the action on x^j evaluated in the monomial basis
  CHECK(en(0, 0) == doctest::Approx(1.0));
  CHECK(en(0, 1) == doctest::Approx(to_double(eg.at({1}))));
  CHECK(en(0, 2) == doctest::Approx(2 * to_double(eg.at({2}))));
  CHECK(en(0, 3) == doctest::Approx(6 * to_double(eg.at({3}))));

  // 3x3 closed form: exp(t [[0,a,-1],[0,0,2a],[0,0,1]])
  double a = 0.75, t = 1.3;
  MatD m(3, 3);
  m(0, 1) = a;
  m(0, 2) = -1;
  m(1, 2) = 2 * a;
  m(2, 2) = 1;
  MatD em = matrix_exp(m * t);
  double et = std::exp(t);
  CHECK(em(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(em(0, 1) == doctest::Approx(a * t).epsilon(1e-12));
  CHECK(em(0, 2) == doctest::Approx((2 * a * a - 1) * (et - 1) - 2 * a * a * t).epsilon(1e-12));
  CHECK(em(1, 2) == doctest::Approx(2 * a * (et - 1)).epsilon(1e-12));
  CHECK(em(2, 2) == doctest::Approx(et).epsilon(1e-12));

  // exp(M) exp(-M) = id and det(exp M) = e^{tr M}
  std::mt19937 rng(107);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatD r(4, 4);
  double tr = 0;
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) {
      r(i, j) = u(rng);
      if (i == j) tr += r(i, j);
    }
  MatD prod = matrix_exp(r) * matrix_exp(r * -1.0);
  for (size_t i = 0; i < 4; ++i)
    for (size_t j = 0; j < 4; ++j) CHECK(std::fabs(prod(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-12);
  CHECK(determinant(matrix_exp(r)) == doctest::Approx(std::exp(tr)).epsilon(1e-10));
}

TEST_CASE("evolution: translation and scaling") {
  Polynomial x = Polynomial::variable(1, 0);
  double t = 0.8;
  NumericPolynomial moved = evolve(derivative_action(), x * x, t);
  // (x + t)^2
  CHECK(moved.coefficient({0}) == doctest::Approx(t * t).epsilon(1e-12));
  CHECK(moved.coefficient({1}) == doctest::Approx(2 * t).epsilon(1e-12));
  CHECK(moved.coefficient({2}) == doctest::Approx(1.0).epsilon(1e-12));

  auto euler = [&](const Polynomial& p) { return Polynomial::variable(1, 0) * p.derive({1}); };
  for (int m = 1; m <= 4; ++m) {
    NumericPolynomial scaled = evolve(euler, x.pow(static_cast<unsigned>(m)), t);
    CHECK(scaled.coefficient(MultiIndex{m}) == doctest::Approx(std::exp(t * m)).epsilon(1e-11));
  }

  NumericPolynomial frozen = evolve(derivative_action(), x * x, 0.0);
  CHECK(frozen.coefficient({2}) == doctest::Approx(1.0));
  CHECK(frozen.coefficient({0}) == doctest::Approx(0.0));
}

TEST_CASE("semigroup law and cross-module oracle") {
  std::mt19937 rng(109);
  Polynomial p = testutil::random_polynomial(rng, 1, 4, 4);
  auto act = derivative_action();
  double s = 0.4, t = 1.1;
  NumericPolynomial one = evolve(act, p, s + t);
  // evolve twice: need the intermediate as exact polynomial; translation by
  // rational steps keeps it exact through taylor_shift instead
  Polynomial ps = p.taylor_shift({frac(2, 5)});  // e^{0.4 d/dx} p, exact
  NumericPolynomial two = evolve(act, ps, t);
  for (const auto& [alpha, c] : one.terms) CHECK(two.coefficient(alpha) == doctest::Approx(c).epsilon(1e-10));

  // constant-coefficient evolution agrees with the symbolic truncated series
  ConstSeries alg = testutil::random_algebra_element(rng, 1, 5, 3);
  auto action = [&](const Polynomial& q) { return alg.apply(q); };
  Polynomial start = testutil::random_polynomial(rng, 1, 5, 4);
  ConstSeries group = exp_series(alg);  // t = 1
  Polynomial symbolic = group.apply(start);
  NumericPolynomial numeric = evolve(action, start, 1.0);
  for (const auto& [alpha, c] : symbolic.terms())
    CHECK(numeric.coefficient(alpha) == doctest::Approx(to_double(c)).epsilon(1e-10));
}

TEST_CASE("invariance transfers from A to the flow") {
  auto act = derivative_action();
  auto chain = fd_membership(act, MultiIndex{3}, 20);
  REQUIRE(chain.stabilized);
  detail::PolySpan span;
  for (const auto& b : chain.basis) span.insert(b);
  for (double t : {0.3, 1.0, 2.5}) {
    NumericPolynomial img = evolve(act, Polynomial::monomial(MultiIndex{3}), t);
    // the image must stay inside span(chain) = R[x]_{<=3}
    for (const auto& [alpha, c] : img.terms) CHECK(alpha[0] <= 3);
  }
}
