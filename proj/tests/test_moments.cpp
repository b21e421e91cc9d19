#include <doctest.h>

#include "polypreserve/atomic_measure.hpp"
#include "polypreserve/moment_checks.hpp"
#include "polypreserve/sequences.hpp"
#include "test_helpers.hpp"

using namespace polypreserve;

namespace {

AtomicMeasure random_measure(std::mt19937& rng, int n, int max_atoms = 3) {
  AtomicMeasure mu(n);
  std::uniform_int_distribution<int> natoms(1, max_atoms);
  int m = natoms(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<Rational> pt;
    for (int j = 0; j < n; ++j) pt.push_back(testutil::random_rational(rng, 5, 3));
    std::uniform_int_distribution<int> w(1, 7);
    mu.add_atom(std::move(pt), frac(w(rng), 2));
  }
  return mu;
}

}  // namespace

TEST_CASE("riesz functional") {
  // s_k = 1/(k+1): moments of Lebesgue measure on [0,1]
  SequenceQ s(1, 5);
  for (int k = 0; k <= 5; ++k) s.set({k}, frac(1, k + 1));
  CHECK(riesz_apply(s, Polynomial::variable(1, 0)) == frac(1, 2));
  CHECK(riesz_apply(s, Polynomial(1)) == 0);

  std::mt19937 rng(67);
  std::vector<Rational> y{frac(3, 2)};
  SequenceQ sd(1, 5);
  for (int k = 0; k <= 5; ++k) sd.set({k}, rational_pow(y[0], static_cast<unsigned>(k)));
  Polynomial p = testutil::random_polynomial(rng, 1, 5, 5);
  CHECK(riesz_apply(sd, p) == p.eval(y));
}

TEST_CASE("hankel matrices") {
  std::vector<Rational> s{1, 0, 1, 0, 1};
  MatQ h1 = hankel(s, 1);
  CHECK(h1(0, 0) == 1);
  CHECK(h1(0, 1) == 0);
  CHECK(h1(1, 0) == 0);
  CHECK(h1(1, 1) == 1);

  std::vector<Rational> lebesgue;
  for (int k = 0; k <= 2; ++k) lebesgue.push_back(frac(1, k + 1));
  CHECK(determinant(hankel(lebesgue, 1)) == frac(1, 12));

  CHECK_THROWS_AS((void)hankel(s, 3), std::invalid_argument);
}

TEST_CASE("hamburger necessary conditions") {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 15; ++trial) {
    AtomicMeasure mu = random_measure(rng, 1);
    auto s = as_1d(atomic_moments(mu, 8));
    CHECK(hamburger_check(s).pass);
  }

  // gap sequence: s_4 = 0 but s_3 != 0 violates Cauchy-Schwarz
  std::vector<double> gap{1, 0, 0, 1, 0, 0, 0, 0, 0};
  auto rep = hamburger_check(gap);
  CHECK(!rep.pass);
  CHECK(rep.first_fail_order >= 1);

  std::vector<double> fact;
  double f = 1;
  for (int k = 0; k <= 8; ++k) {
    fact.push_back(f);
    f *= (k + 1);
  }
  CHECK(hamburger_check(fact).pass);
}

TEST_CASE("stieltjes necessary conditions") {
  std::vector<double> fact;
  double f = 1;
  for (int k = 0; k <= 8; ++k) {
    fact.push_back(f);
    f *= (k + 1);
  }
  auto rep = stieltjes_check(fact);
  CHECK(rep.base.pass);
  CHECK(rep.shifted.pass);
  CHECK(rep.pass);

  // delta_{-1}: passes Hamburger, fails the shifted Hankel
  std::vector<double> neg;
  for (int k = 0; k <= 6; ++k) neg.push_back(k % 2 ? -1.0 : 1.0);
  auto rneg = stieltjes_check(neg);
  CHECK(rneg.base.pass);
  CHECK(!rneg.shifted.pass);

  std::vector<double> zero(7, 0.0);
  CHECK(stieltjes_check(zero).pass);
}

TEST_CASE("hausdorff differences") {
  // s_k = 1/(k+1): L(x^m (1-x)^p) = m! p! / (m+p+1)!  (Beta integral oracle)
  std::vector<Rational> s;
  for (int k = 0; k <= 6; ++k) s.push_back(frac(1, k + 1));
  auto rep = hausdorff_check<Rational>(s);
  CHECK(rep.pass);
  for (const auto& e : rep.entries) {
    Rational expect = frac(factorial(static_cast<unsigned>(e.m)) * factorial(static_cast<unsigned>(e.p)),
                           factorial(static_cast<unsigned>(e.m + e.p + 1)));
    CHECK(e.value == expect);
  }

  // atom at 2 is outside [0,1]: (m,p) = (0,1) gives 1 - 2 < 0
  std::vector<Rational> two;
  for (int k = 0; k <= 4; ++k) two.push_back(rational_pow(Rational(2), static_cast<unsigned>(k)));
  auto rtwo = hausdorff_check<Rational>(two);
  CHECK(!rtwo.pass);
  CHECK(rtwo.witness_m == 0);
  CHECK(rtwo.witness_p == 1);

  // delta_1: every difference with p >= 1 vanishes
  std::vector<Rational> one(6, Rational(1));
  auto rone = hausdorff_check<Rational>(one);
  CHECK(rone.pass);
  for (const auto& e : rone.entries)
    if (e.p >= 1) CHECK(e.value == 0);
}

TEST_CASE("convolution of sequences vs measures") {
  std::mt19937 rng(73);

  // unit element
  SequenceQ unit(1, 6);
  unit.set({0}, 1);
  AtomicMeasure mu = random_measure(rng, 1);
  auto s = atomic_moments(mu, 6);
  CHECK(convolve(s, unit) == s);

  // delta_a * delta_b = delta_{a+b}
  AtomicMeasure da(1), db(1);
  da.add_atom({frac(2, 3)}, 1);
  db.add_atom({frac(-1, 4)}, 1);
  auto conv = additive_convolve(da, db);
  REQUIRE(conv.atoms.size() == 1);
  CHECK(conv.atoms[0].point[0] == frac(2, 3) - frac(1, 4));

  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + trial % 3;
    AtomicMeasure a = random_measure(rng, n);
    AtomicMeasure b = random_measure(rng, n);
    CHECK(atomic_moments(additive_convolve(a, b), 6) == convolve(atomic_moments(a, 6), atomic_moments(b, 6)));
  }
}

TEST_CASE("hadamard product vs multiplicative image measure") {
  std::mt19937 rng(79);
  SequenceQ s(1, 5);
  for (int k = 0; k <= 5; ++k) s.set({k}, testutil::random_rational(rng));
  SequenceQ ones(1, 5);
  for (int k = 0; k <= 5; ++k) ones.set({k}, 1);
  CHECK(hadamard(s, ones) == s);

  for (int trial = 0; trial < 15; ++trial) {
    int n = 1 + trial % 2;
    AtomicMeasure a = random_measure(rng, n, 2);
    AtomicMeasure b = random_measure(rng, n, 2);
    CHECK(atomic_moments(multiplicative_convolve(a, b), 6) ==
          hadamard(atomic_moments(a, 6), atomic_moments(b, 6)));
  }

  // (t^k) o (k!) = (k! t^k) passes the Hamburger test  (moments of a scaled
  // exponential distribution)
  double t = 0.7;
  std::vector<double> st;
  double f = 1, tp = 1;
  for (int k = 0; k <= 8; ++k) {
    st.push_back(f * tp);
    f *= (k + 1);
    tp *= t;
  }
  CHECK(hamburger_check(st).pass);
}

TEST_CASE("additive convolution squares") {
  AtomicMeasure half(1);
  half.add_atom({Rational(-1)}, frac(1, 2));
  half.add_atom({Rational(1)}, frac(1, 2));
  auto sq = additive_convolve(half, half);
  REQUIRE(sq.atoms.size() == 3);
  CHECK(sq.total_mass() == 1);
  for (const auto& atom : sq.atoms) {
    if (atom.point[0] == 0) CHECK(atom.weight == frac(1, 2));
    else CHECK(atom.weight == frac(1, 4));
  }

  AtomicMeasure d0(1);
  d0.add_atom({Rational(0)}, 1);
  std::mt19937 rng(83);
  AtomicMeasure m = random_measure(rng, 1);
  CHECK(additive_convolve(m, d0).atoms.size() == m.atoms.size());
}
