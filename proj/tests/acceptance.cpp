// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criterion 1 and 3 drive the CLI binary passed via --cli.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "polypreserve/json_io.hpp"
#include "polypreserve/polypreserve.hpp"

using namespace polypreserve;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string run_cli(const std::string& cli, const std::string& args, int& exit_code) {
  std::string cmd = cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  exit_code = pclose(pipe);
  return out;
}

Rational random_rational(std::mt19937& rng, int num_range = 3, int den_range = 3) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return frac(num(rng), den(rng));
}

ConstSeries random_group_element(std::mt19937& rng, int n, int d, int max_terms) {
  ConstSeries s = ConstSeries::one(n, d);
  auto idx = multi_indices_up_to(n, d);
  std::uniform_int_distribution<size_t> pick(1, idx.size() - 1);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  int m = nterms(rng);
  for (int t = 0; t < m && idx.size() > 1; ++t) s.set(idx[pick(rng)], random_rational(rng));
  return s;
}

AtomicMeasure random_measure(std::mt19937& rng, int n, int max_atoms = 3) {
  AtomicMeasure mu(n);
  std::uniform_int_distribution<int> natoms(1, max_atoms);
  std::uniform_int_distribution<int> w(1, 6);
  int m = natoms(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<Rational> pt;
    for (int j = 0; j < n; ++j) pt.push_back(random_rational(rng, 5, 3));
    mu.add_atom(std::move(pt), frac(w(rng), 2));
  }
  return mu;
}

// ---- criteria --------------------------------------------------------------

void criterion_1(const std::string& cli) {
  auto t0 = Clock::now();
  int code = 0;
  std::string out = run_cli(cli, "reproduce prop71", code);
  double dt = seconds_since(t0);
  bool pass = false;
  std::ostringstream detail;
  try {
    Json j = Json::parse(out);
    double lo = j.at("bracket").at("lo").get<double>();
    double hi = j.at("bracket").at("hi").get<double>();
    double slo = j.at("sigma3").at("at_lo").get<double>();
    double shi = j.at("sigma3").at("at_hi").get<double>();
    pass = code == 0 && j.at("pass").get<bool>() && lo > 1.19688e-2 && hi < 1.19689e-2 &&
           slo < 0 && shi > 0 && std::fabs(slo + 3.39928e-8) <= 0.005 * 3.39928e-8 &&
           std::fabs(shi - 1.7888e-8) <= 0.005 * 1.7888e-8 && dt < 5.0;
    detail << "prop71 bracket [" << lo << ", " << hi << "], sigma3 " << slo << "/" << shi << ", "
           << dt << " s";
  } catch (const std::exception& e) {
    detail << "cli failure: " << e.what();
  }
  report(1, pass, detail.str());
}

void criterion_2() {
  auto model = cubic_diagonal_model(4);
  const ExpSum& h2 = model.det(2);
  bool pass = h2.value_at_zero() == 0 && h2.derivative().value_at_zero() == 0 &&
              h2.derivative().derivative().value_at_zero() == -72;
  report(2, pass, "h2(0) = 0, h2'(0) = 0, h2''(0) = -72 exactly");
}

void criterion_3(const std::string& cli) {
  auto t0 = Clock::now();
  int code = 0;
  std::string out = run_cli(cli, "reproduce exm74", code);
  double dt = seconds_since(t0);
  bool pass = false;
  std::ostringstream detail;
  try {
    Json j = Json::parse(out);
    pass = code == 0 && j.at("pass").get<bool>() && dt < 10.0;
    detail << "five tau brackets reproduced, symmetric in a, " << dt << " s";
  } catch (const std::exception& e) {
    detail << "cli failure: " << e.what();
  }
  report(3, pass, detail.str());
}

void criterion_4() {
  bool all_negative = true;
  double max_rel = 0;
  for (int i = 1; i <= 1000; ++i) {
    double t = 50.0 * i / 1000.0;
    double b = quadratic_min_boundary(t);
    double d = quadratic_min(0.2, t);
    all_negative = all_negative && b < 0;
    max_rel = std::max(max_rel, std::fabs(b - d) / std::max(std::fabs(b), 1e-300));
  }
  bool pass = all_negative && max_rel <= 1e-10;
  std::ostringstream detail;
  detail << "boundary m < 0 at 1000 samples, identity rel err " << max_rel;
  report(4, pass, detail.str());
}

void criterion_5() {
  std::mt19937 rng(20260808);
  bool pass = true;
  for (int trial = 0; trial < 200 && pass; ++trial) {
    int n = 1 + trial % 3;
    int d = 1 + trial % 10;
    int terms = d >= 7 ? 3 : 5;
    ConstSeries a = random_group_element(rng, n, d, terms);
    ConstSeries b = random_group_element(rng, n, d, terms);
    ConstSeries c = random_group_element(rng, n, d, terms);
    ConstSeries one = ConstSeries::one(n, d);
    pass = pass && (a * b) * c == a * (b * c) && a * b == b * a && a * one == a;
    pass = pass && a * inverse(a) == one && inverse(inverse(a)) == a;
    pass = pass && exp_series(log_series(a)) == a;
    ConstSeries alg = a - one;
    ConstSeries alg0(n, d);
    for (const auto& [idx, v] : alg.coefficients())
      if (order_of(idx) > 0) alg0.set(idx, v);
    pass = pass && log_series(exp_series(alg0)) == alg0;
  }

  // d = 3 closed-form inverse as a polynomial identity in a1, a2, a3
  Polynomial a1 = Polynomial::variable(3, 0), a2 = Polynomial::variable(3, 1),
             a3 = Polynomial::variable(3, 2);
  Polynomial b1 = -a1;
  Polynomial b2 = -a2 + a1 * a1;
  Polynomial b3 = -a3 + Rational(2) * a2 * a1 - a1 * a1 * a1;
  bool symbolic = (a1 + b1).is_zero() && (a2 + a1 * b1 + b2).is_zero() &&
                  (a3 + a2 * b1 + a1 * b2 + b3).is_zero();
  // and the recursion reproduces it on random rationals
  std::mt19937 rng2(7);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> v{random_rational(rng2, 9, 7), random_rational(rng2, 9, 7),
                            random_rational(rng2, 9, 7)};
    ConstSeries g = ConstSeries::one(1, 3);
    g.set({1}, v[0]);
    g.set({2}, v[1]);
    g.set({3}, v[2]);
    ConstSeries inv = inverse(g);
    symbolic = symbolic && inv.at({1}) == b1.eval(v) && inv.at({2}) == b2.eval(v) &&
               inv.at({3}) == b3.eval(v);
  }
  report(5, pass && symbolic, "200 exact group-law/exp/log roundtrips; d=3 inverse closed form");
}

void criterion_6() {
  std::mt19937 rng(424242);
  bool pass = true;
  for (int trial = 0; trial < 100 && pass; ++trial) {
    int n = 1 + trial % 3;
    AtomicMeasure mu = random_measure(rng, n);
    AtomicMeasure nu = random_measure(rng, n);
    SequenceQ s = atomic_moments(mu, 8);
    SequenceQ t = atomic_moments(nu, 8);
    SequenceQ st = convolve(s, t);
    pass = pass && atomic_moments(additive_convolve(mu, nu), 8) == st;
    pass = pass && from_sequence(s, 8) * from_sequence(t, 8) == from_sequence(st, 8);
    pass = pass && atomic_moments(multiplicative_convolve(mu, nu), 8) == hadamard(s, t);
  }
  report(6, pass, "100 exact convolution/Hadamard identities at order 8");
}

void criterion_7() {
  CheckConfig cfg;
  bool pass = true;
  for (Rational t : {Rational(0), frac(1, 10), Rational(1), Rational(10)}) {
    ConstSeries heat = ConstSeries::zero(1, 10);
    heat.set({2}, t);
    pass = pass && check_preserver(exp_series(heat), KDomain::reals(), cfg).pass;
  }
  ConstSeries back = ConstSeries::zero(1, 10);
  back.set({2}, frac(-1, 10));
  ConstSeries eb = exp_series(back);
  auto vb = check_preserver(eb, KDomain::reals(), cfg);
  bool witness_ok = !vb.pass && vb.witness && vb.witness->hankel_order == 1;
  // the quadratic witness: exp(t d^2) x^2 = x^2 + 2t, negative at the origin
  Polynomial x = Polynomial::variable(1, 0);
  Polynomial img = eb.apply(x * x);
  witness_ok = witness_ok && img == x * x + Polynomial::constant(1, frac(-1, 5)) &&
               img.eval({Rational(0)}) < 0;
  pass = pass && witness_ok;
  for (Rational a : {Rational(1), Rational(-1), frac(1, 100), frac(-1, 100)}) {
    ConstSeries g = ConstSeries::zero(1, 10);
    g.set({3}, a);
    auto v = check_preserver(exp_series(g), KDomain::reals(), cfg);
    pass = pass && !v.pass && v.witness.has_value();
  }
  report(7, pass, "heat flow passes (t >= 0), fails at t < 0 with x^2+2t; exp(a d^3) gap witness");
}

void criterion_8() {
  Polynomial x = Polynomial::variable(1, 0);
  bool pass = true;
  std::ostringstream detail;
  for (int d = 1; d <= 6 && pass; ++d) {
    OperatorSeries a(1, d);
    a.set_coefficient({1}, x);
    std::vector<Rational> below{Rational(-1), frac(1, 2 * d), frac(2, 2 * d + 1) * frac(1, 2)};
    for (const auto& lam : below) {
      auto rep = check_resolvent(a, d, {lam});
      pass = pass && rep.entries[0].pass;
      if (!rep.entries[0].pass) detail << " pass-side failure at d=" << d;
    }
    // three samples in (1/d, 2/d) avoiding the poles 1/k
    for (int j = 8; j <= 10; ++j) {
      Rational lam = frac(j, 7 * d);
      bool is_pole = false;
      for (int k = 1; k <= d; ++k)
        if (lam == frac(1, k)) is_pole = true;
      if (is_pole) continue;
      auto rep = check_resolvent(a, d, {lam});
      pass = pass && !rep.entries[0].pass;
      if (rep.entries[0].pass) detail << " fail-side miss at d=" << d << " lambda=" << lam.get_str();
    }
  }
  report(8, pass, "resolvent of x d/dx: boundary at 1/d for d <= 6" + detail.str());
}

void criterion_9() {
  auto deriv = [](const Polynomial& p) { return p.derive({1}); };
  bool pass = true;
  for (int d = 1; d <= 5; ++d) {
    auto chain = fd_membership(deriv, MultiIndex{d}, 60);
    pass = pass && chain.stabilized && static_cast<int>(chain.basis.size()) == d + 1;
  }
  auto a = [](const Polynomial& p) {
    Polynomial out(1);
    for (const auto& [al, c] : p.terms()) out.add_term(MultiIndex{al[0] % 2 == 0 ? al[0] : al[0] + 1}, c);
    return out;
  };
  auto b = [](const Polynomial& p) {
    Polynomial out(1);
    for (const auto& [al, c] : p.terms()) out.add_term(MultiIndex{al[0] % 2 == 0 ? al[0] + 1 : al[0]}, c);
    return out;
  };
  pass = pass && fd_membership(a, MultiIndex{5}, 40).stabilized;
  pass = pass && fd_membership(b, MultiIndex{6}, 40).stabilized;
  Polynomial seed = Polynomial::monomial(MultiIndex{2});
  auto apb = [&](const Polynomial& p) { return a(p) + b(p); };
  auto ab = [&](const Polynomial& p) { return a(b(p)); };
  auto ba = [&](const Polynomial& p) { return b(a(p)); };
  auto comm = [&](const Polynomial& p) { return a(b(p)) - b(a(p)); };
  pass = pass && !build_invariant_chain(apb, {seed}, 40).stabilized;
  pass = pass && !build_invariant_chain(ab, {seed}, 40).stabilized;
  pass = pass && !build_invariant_chain(ba, {seed}, 40).stabilized;
  pass = pass && !build_invariant_chain(comm, {seed}, 40).stabilized;
  report(9, pass, "derivative chain = R[x]_{<=d}; shift pair: A, B stabilize, combinations exceed cap");
}

void criterion_10() {
  std::mt19937 rng(555);
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  std::uniform_real_distribution<double> wt(0.1, 2.0);
  std::uniform_int_distribution<int> kk(1, 4);
  bool pass = true;
  double worst = 0;
  for (int trial = 0; trial < 100 && pass; ++trial) {
    int k = kk(rng);
    std::vector<double> pts;
    while (static_cast<int>(pts.size()) < k) {
      double v = pos(rng);
      bool ok = true;
      for (double y : pts)
        if (std::fabs(v - y) < 0.1) ok = false;
      if (ok) pts.push_back(v);
    }
    NumericAtomicMeasure mu(1);
    for (double v : pts) mu.add_atom({v}, wt(rng));
    auto s = as_1d(atomic_moments(mu, 2 * k - 1));
    auto rec = recover_atoms(s, k);
    if (rec.atom_count != k) {
      pass = false;
      break;
    }
    auto back = as_1d(atomic_moments(rec.measure, 2 * k - 1));
    double scale = 1;
    for (double v : s) scale = std::max(scale, std::fabs(v));
    for (size_t j = 0; j < s.size(); ++j) {
      double err = std::fabs(back[j] - s[j]) / scale;
      worst = std::max(worst, err);
      pass = pass && err <= 1e-10;
    }
  }
  std::ostringstream detail;
  detail << "100 recovery roundtrips, worst relative error " << worst;
  report(10, pass, detail.str());
}

void criterion_11() {
  Polynomial x = Polynomial::variable(1, 0);
  bool pass = bernstein_poly(x, 5) == x;
  pass = pass && bernstein_poly(x * x, 2) == (x + x * x) * frac(1, 2);

  Polynomial f = x.pow(3) - x * frac(3, 2) + Polynomial::constant(1, 2);
  double prev = 1e300;
  for (int d : {8, 16, 32, 64}) {
    Polynomial bf = bernstein_poly(f, d);
    double err = 0;
    for (int i = 0; i <= 1000; ++i) {
      double xx = i / 1000.0;
      err = std::max(err, std::fabs(f.eval(std::vector<double>{xx}) - bf.eval(std::vector<double>{xx})));
    }
    pass = pass && err <= prev;
    prev = err;
  }

  std::mt19937 rng(777);
  std::uniform_int_distribution<int> coef(-4, 4);
  auto rand_poly = [&](int deg) {
    Polynomial p(1);
    for (int i = 0; i <= deg; ++i) p.add_term(MultiIndex{i}, frac(coef(rng), 1 + (i % 2)));
    return p;
  };
  double a = -1, b = 2;
  Polynomial w = (x - Polynomial::constant(1, Rational(-1))) * (Polynomial::constant(1, 2) - x);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 100 && pass; ++trial) {
    Polynomial q = rand_poly(1 + trial % 4);
    Polynomial r = rand_poly(trial % 3);
    Polynomial p = q * q + w * r * r;
    auto dp = p.degree();
    if (!dp || *dp == 0 || *dp % 2) continue;
    auto res = lukacs_markov(p, a, b);
    if (!std::holds_alternative<SosCert>(res)) {
      pass = false;
      break;
    }
    const auto& cert = std::get<SosCert>(res);
    int m = *dp / 2;
    pass = pass && poly1::degree(cert.f) <= m && poly1::degree(cert.g) <= m - 1;
    double scale = 1;
    for (int i = 0; i <= 400; ++i) {
      double xx = a + (b - a) * i / 400.0;
      scale = std::max(scale, std::fabs(p.eval(std::vector<double>{xx})));
    }
    pass = pass && cert.residual <= 1e-9 * scale;
    ++done;
  }
  pass = pass && done >= 100;

  int sos_done = 0;
  for (int trial = 0; trial < 300 && sos_done < 50 && pass; ++trial) {
    Polynomial fq = rand_poly(1 + trial % 4);
    Polynomial gq = rand_poly(trial % 4);
    Polynomial p = fq * fq + gq * gq;
    auto dp = p.degree();
    if (!dp || *dp % 2 || *dp == 0) continue;
    auto res = sos_decompose_R(p);
    if (!std::holds_alternative<SosCert>(res)) {
      pass = false;
      break;
    }
    double scale = 1;
    for (int i = 0; i <= 400; ++i) {
      double xx = -2 + 4.0 * i / 400.0;
      scale = std::max(scale, std::fabs(p.eval(std::vector<double>{xx})));
    }
    pass = pass && std::get<SosCert>(res).residual <= 1e-10 * (1 + scale);
    ++sos_done;
  }
  pass = pass && sos_done >= 50;
  report(11, pass, "Bernstein exact cases + monotone error; 100 Lukacs-Markov degree-sharp roundtrips; SOS residuals");
}

void criterion_12() {
  std::mt19937 rng(909090);
  bool pass = true;
  std::uniform_int_distribution<int> sig(0, 5);
  for (int trial = 0; trial < 100 && pass; ++trial) {
    AtomicMeasure nu(1);
    int atoms = 1 + trial % 3;
    for (int i = 0; i < atoms; ++i) {
      Rational pt = random_rational(rng, 4, 3);
      if (pt == 0) pt = frac(1 + i, 2);
      nu.add_atom({pt}, frac(1 + (trial + i) % 5, 3));
    }
    LevyTriplet tr{{random_rational(rng)}, MatQ(1, 1, Rational(sig(rng))), nu};
    pass = pass && generator_check_1d(levy_generator(tr, 10)).pass;
  }
  // terminating series with top order k >= 3 must all fail
  for (int k = 3; k <= 8 && pass; ++k) {
    for (Rational c : {Rational(1), Rational(-1), frac(1, 50)}) {
      ConstSeries aseries = ConstSeries::zero(1, 2 * k + 2);
      aseries.set({1}, frac(-1, 2));
      aseries.set({2}, frac(1, 3));  // legal drift/diffusion part
      aseries.set({k}, c);
      pass = pass && !generator_check_1d(aseries).pass;
    }
  }
  report(12, pass, "100 Levy-triplet generators pass; d^k-dominant tails (k = 3..8) all fail");
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
  if (cli.empty()) {
    std::fprintf(stderr, "usage: acceptance --cli <path-to-polypreserve-binary>\n");
    return 2;
  }
  auto t0 = Clock::now();
  criterion_1(cli);
  criterion_2();
  criterion_3(cli);
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("total: %.1f s, %d failure(s)\n", seconds_since(t0), g_failures);
  return g_failures == 0 ? 0 : 1;
}
