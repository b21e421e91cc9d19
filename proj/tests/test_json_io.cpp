#include <doctest.h>

#include "polypreserve/json_io.hpp"
#include "test_helpers.hpp"

using namespace polypreserve;

TEST_CASE("json round trips") {
  std::mt19937 rng(211);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 1 + trial % 3;
    Polynomial p = testutil::random_polynomial(rng, n, 4, 6);
    CHECK(polynomial_from_json(to_json(p)) == p);

    OperatorSeries t(n, 3);
    for (const auto& a : multi_indices_up_to(n, 3))
      if (trial % 2 == 0 || order_of(a) < 2) t.set_coefficient(a, testutil::random_polynomial(rng, n, 2, 3));
    CHECK(operator_series_from_json(to_json(t)) == t);

    ConstSeries s = testutil::random_group_element(rng, n, 4);
    CHECK(const_series_from_json(to_json(s)) == s);

    SequenceQ q(n, 4);
    for (const auto& a : multi_indices_up_to(n, 4)) q.set(a, testutil::random_rational(rng));
    CHECK(sequence_from_json(to_json(q)) == q);
  }

  AtomicMeasure mu(2);
  mu.add_atom({frac(1, 3), frac(-2, 5)}, frac(7, 2));
  mu.add_atom({Rational(4), Rational(0)}, Rational(1));
  AtomicMeasure back = atomic_measure_from_json(to_json(mu));
  REQUIRE(back.atoms.size() == 2);
  CHECK(back.atoms[0].point == mu.atoms[0].point);
  CHECK(back.atoms[1].weight == mu.atoms[1].weight);
}

TEST_CASE("json emission is deterministic") {
  std::mt19937 rng(223);
  Polynomial p = testutil::random_polynomial(rng, 2, 5, 8);
  CHECK(to_json(p).dump() == to_json(polynomial_from_json(to_json(p))).dump());
}

TEST_CASE("resolvent reports exact poles per lambda") {
  Polynomial x = Polynomial::variable(1, 0);
  OperatorSeries a(1, 2);
  a.set_coefficient({1}, x);
  auto rep = check_resolvent(a, 2, {frac(1, 2)});  // 1 - lambda*A singular on x^2
  REQUIRE(rep.entries.size() == 1);
  CHECK(rep.entries[0].singular);
  CHECK(!rep.entries[0].pass);
}

TEST_CASE("evolution refuses when the chain exceeds the cap") {
  auto grow = [](const Polynomial& p) {
    Polynomial out(1);
    for (const auto& [al, c] : p.terms()) out.add_term(MultiIndex{al[0] + 1}, c);
    return out;
  };
  CHECK_THROWS_AS((void)evolve(grow, Polynomial::monomial(MultiIndex{1}), 1.0, 30), std::domain_error);
}

TEST_CASE("bernstein refusal past the degree cap") {
  Polynomial x = Polynomial::variable(1, 0);
  Polynomial f = (x - Polynomial::constant(1, frac(1, 2))).pow(2);  // interior zero: no certificate
  auto r = bernstein_certificate(f, 40);
  REQUIRE(std::holds_alternative<BernsteinRefusal>(r));
  CHECK(!std::get<BernsteinRefusal>(r).negative_witness);
}
