// polypreserve: command-line surface for the operator/moment toolkit.
// Verdict-type results exit 0 even when the mathematical answer is "fail";
// nonzero exits signal operational problems (bad files, bad flags).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "polypreserve/json_io.hpp"
#include "polypreserve/polypreserve.hpp"

using namespace polypreserve;

namespace {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
  }
}

std::vector<Rational> parse_rational_list(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(rational_from_string(item));
  }
  return out;
}

KDomain parse_domain(const std::string& name, const std::string& a, const std::string& lo,
                     const std::string& hi, int n) {
  if (name == "R" || name == "r") return KDomain::reals();
  if (name == "halfline") return KDomain::half(rational_from_string(a.empty() ? "0" : a));
  if (name == "box") {
    auto lov = parse_rational_list(lo.empty() ? "-1" : lo);
    auto hiv = parse_rational_list(hi.empty() ? "1" : hi);
    if (static_cast<int>(lov.size()) == 1 && n > 1) lov.assign(static_cast<size_t>(n), lov[0]);
    if (static_cast<int>(hiv.size()) == 1 && n > 1) hiv.assign(static_cast<size_t>(n), hiv[0]);
    return KDomain::interval_box(lov, hiv);
  }
  throw CLI::ValidationError("--K must be one of R, halfline, box");
}

std::vector<std::vector<Rational>> parse_grid(const std::string& grid, int n) {
  std::vector<std::vector<Rational>> out;
  std::stringstream ss(grid);
  std::string point;
  while (std::getline(ss, point, ';')) {
    if (point.empty()) continue;
    auto coords = parse_rational_list(point);
    if (static_cast<int>(coords.size()) != n) throw CLI::ValidationError("grid point dimension mismatch");
    out.push_back(coords);
  }
  return out;
}

// ---- reproduce targets -----------------------------------------------------

Json reproduce_prop71(const std::string& csv_path) {
  auto model = cubic_diagonal_model(4);
  auto rep = model.analyze(0.0, 0.05, 400);
  const double expected_lo = 1.19688e-2, expected_hi = 1.19689e-2;
  double s_lo = model.sigma_min(2, 0.0119688);
  double s_hi = model.sigma_min(2, 0.0119689);
  const double exp_s_lo = -3.39928e-8, exp_s_hi = 1.7888e-8;
  const auto& h2 = model.det(2);
  Rational h2_0 = h2.value_at_zero();
  Rational h2p_0 = h2.derivative().value_at_zero();
  Rational h2pp_0 = h2.derivative().derivative().value_at_zero();
  bool pass = rep.bracket_valid && rep.lo > expected_lo && rep.hi < expected_hi && s_lo < 0 &&
              s_hi > 0 && std::fabs(s_lo - exp_s_lo) <= 0.005 * std::fabs(exp_s_lo) &&
              std::fabs(s_hi - exp_s_hi) <= 0.005 * std::fabs(exp_s_hi) && h2_0 == 0 && h2p_0 == 0 &&
              h2pp_0 == -72;
  if (!csv_path.empty()) {
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i <= 1000; ++i) {
      double t = 0.015 * i / 1000.0;
      samples.emplace_back(t, model.sigma_min(2, t));
    }
    emit_text(curve_csv(samples), csv_path);
  }
  return Json{{"target", "prop71"},
              {"bracket", Json{{"lo", rep.lo}, {"hi", rep.hi}}},
              {"expected_bracket", Json{{"lo", expected_lo}, {"hi", expected_hi}}},
              {"sigma3", Json{{"at_lo", s_lo}, {"at_hi", s_hi}}},
              {"sigma3_expected", Json{{"at_lo", exp_s_lo}, {"at_hi", exp_s_hi}}},
              {"h2_at_zero",
               Json{{"value", rational_to_json(h2_0)},
                    {"first_derivative", rational_to_json(h2p_0)},
                    {"second_derivative", rational_to_json(h2pp_0)}}},
              {"pass", pass}};
}

Json reproduce_prop73(const std::string& csv_path) {
  int samples = 1000;
  double max_val = -1e300, max_rel_err = 0;
  std::vector<std::pair<double, double>> curve;
  for (int i = 1; i <= samples; ++i) {
    double t = 50.0 * i / samples;
    double b = quadratic_min_boundary(t);
    double direct = quadratic_min(0.2, t);
    max_val = std::max(max_val, b);
    max_rel_err = std::max(max_rel_err, std::fabs(b - direct) / std::max(std::fabs(b), 1e-300));
    curve.emplace_back(t, b);
  }
  if (!csv_path.empty()) emit_text(curve_csv(curve), csv_path);
  bool pass = max_val < 0 && max_rel_err <= 1e-10;
  return Json{{"target", "prop73"},
              {"samples", samples},
              {"max_boundary_value", max_val},
              {"max_identity_relative_error", max_rel_err},
              {"pass", pass}};
}

Json reproduce_exm74(const std::string& csv_path) {
  struct Row {
    double a, lo, hi;
  };
  const Row rows[] = {{0.44721360, 22.655, 22.656},
                      {0.45, 7.5504, 7.5505},
                      {1.0, 1.1675, 1.1676},
                      {10.0, 9.7541e-2, 9.7542e-2},
                      {100.0, 9.6219e-3, 9.6220e-3}};
  Json table = Json::array();
  bool pass = true;
  std::vector<std::pair<double, double>> curve;
  for (const auto& row : rows) {
    auto rp = eventual_quadratic(row.a, 0.0, 2.0 * row.hi + 1.0);
    auto rm = eventual_quadratic(-row.a, 0.0, 2.0 * row.hi + 1.0);
    bool ok = rp.bracket_valid && rm.bracket_valid && rp.lo > row.lo && rp.hi < row.hi &&
              rp.lo == rm.lo && rp.hi == rm.hi;
    pass = pass && ok;
    table.push_back(Json{{"a", row.a},
                         {"bracket", Json{{"lo", rp.lo}, {"hi", rp.hi}}},
                         {"expected", Json{{"lo", row.lo}, {"hi", row.hi}}},
                         {"symmetric", rp.bracket_valid && rm.bracket_valid && rp.lo == rm.lo},
                         {"pass", ok}});
  }
  if (!csv_path.empty()) {
    for (int i = 1; i <= 1000; ++i) {
      double t = 25.0 * i / 1000.0;
      curve.emplace_back(t, quadratic_min_for(0.44721360, t));
    }
    emit_text(curve_csv(curve), csv_path);
  }
  return Json{{"target", "exm74"}, {"rows", table}, {"pass", pass}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear operators on polynomials: moments, preservers, semigroups, certificates"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write the JSON result to a file instead of stdout");

  // ---- op ----
  auto* op = app.add_subcommand("op", "canonical-form operator utilities");
  op->require_subcommand(1);
  std::string op_images, op_file, op_poly;
  auto* op_extract = op->add_subcommand("extract", "canonical coefficients from monomial images");
  op_extract->add_option("--images", op_images, "JSON file: n, D, images[{alpha, poly}]")->required();
  auto* op_apply = op->add_subcommand("apply", "apply an operator to a polynomial");
  op_apply->add_option("--op", op_file)->required();
  op_apply->add_option("--poly", op_poly)->required();
  auto* op_diag = op->add_subcommand("diag", "diagonal form or violation witness");
  op_diag->add_option("--op", op_file)->required();

  // ---- cgroup ----
  auto* cg = app.add_subcommand("cgroup", "constant-coefficient group/algebra");
  cg->require_subcommand(1);
  std::string cg_a, cg_b;
  auto* cg_mul = cg->add_subcommand("mul");
  cg_mul->add_option("--a", cg_a)->required();
  cg_mul->add_option("--b", cg_b)->required();
  auto* cg_inv = cg->add_subcommand("inv");
  cg_inv->add_option("--a", cg_a)->required();
  auto* cg_exp = cg->add_subcommand("exp");
  cg_exp->add_option("--a", cg_a)->required();
  auto* cg_log = cg->add_subcommand("log");
  cg_log->add_option("--a", cg_a)->required();

  // ---- moments ----
  auto* mo = app.add_subcommand("moments", "moment-sequence calculus");
  mo->require_subcommand(1);
  std::string mo_seq, mo_a, mo_b, mo_test = "hamburger", mo_csv;
  std::vector<double> mo_interval{0.0, 1.0};
  int mo_k = 1;
  auto* mo_check = mo->add_subcommand("check", "truncated moment tests");
  mo_check->add_option("--seq", mo_seq)->required();
  mo_check->add_option("--test", mo_test, "hamburger|stieltjes|hausdorff");
  mo_check->add_option("--csv", mo_csv, "also write order,min_eigenvalue,verdict CSV");
  mo_check->add_option("--interval", mo_interval, "hausdorff interval endpoints")->expected(2);
  auto* mo_conv = mo->add_subcommand("convolve");
  mo_conv->add_option("--a", mo_a)->required();
  mo_conv->add_option("--b", mo_b)->required();
  auto* mo_had = mo->add_subcommand("hadamard");
  mo_had->add_option("--a", mo_a)->required();
  mo_had->add_option("--b", mo_b)->required();
  auto* mo_rec = mo->add_subcommand("recover", "atom recovery from 1D moments");
  mo_rec->add_option("--seq", mo_seq)->required();
  mo_rec->add_option("--k", mo_k, "atom count")->required();

  // ---- preserve ----
  auto* pr = app.add_subcommand("preserve", "K-positivity preserver checks");
  pr->require_subcommand(1);
  std::string pr_op, pr_k = "R", pr_a, pr_lo, pr_hi, pr_grid, pr_lambdas;
  int pr_order = -1, pr_d = 4;
  auto* pr_check = pr->add_subcommand("check");
  pr_check->add_option("--op", pr_op)->required();
  pr_check->add_option("--K", pr_k, "R|halfline|box");
  pr_check->add_option("--a", pr_a, "halfline start");
  pr_check->add_option("--lo", pr_lo, "box lower corner, comma separated");
  pr_check->add_option("--hi", pr_hi, "box upper corner");
  pr_check->add_option("--grid", pr_grid, "semicolon-separated points, comma-separated coords");
  pr_check->add_option("--order", pr_order, "truncate the operator to this order first");
  auto* pr_res = pr->add_subcommand("resolvent");
  pr_res->add_option("--op", pr_op)->required();
  pr_res->add_option("--d", pr_d, "degree block");
  pr_res->add_option("--lambdas", pr_lambdas, "comma-separated rational lambdas")->required();
  auto* pr_gen = pr->add_subcommand("generator");
  pr_gen->add_option("--op", pr_op)->required();
  pr_gen->add_option("--K", pr_k, "R|halfline|box");
  pr_gen->add_option("--a", pr_a, "halfline start");
  pr_gen->add_option("--lo", pr_lo);
  pr_gen->add_option("--hi", pr_hi);
  pr_gen->add_option("--grid", pr_grid);

  // ---- semigroup ----
  auto* sg = app.add_subcommand("semigroup", "evolution and eventual positivity");
  sg->require_subcommand(1);
  std::string sg_op, sg_poly, sg_model = "quadratic", sg_csv;
  double sg_t = 1.0, sg_a = 1.0;
  std::vector<double> sg_range{0.0, 25.0};
  int sg_steps = 1000, sg_degree = 4;
  auto* sg_evolve = sg->add_subcommand("evolve");
  sg_evolve->add_option("--op", sg_op)->required();
  sg_evolve->add_option("--poly", sg_poly)->required();
  sg_evolve->add_option("--t", sg_t)->required();
  auto* sg_tau = sg->add_subcommand("tau", "threshold bracket");
  sg_tau->add_option("--model", sg_model, "diag|quadratic");
  sg_tau->add_option("--param", sg_a, "quadratic drift parameter a");
  sg_tau->add_option("--degree", sg_degree, "diagonal model degree");
  auto* sg_curve = sg->add_subcommand("curve", "criterion samples as CSV");
  sg_curve->add_option("--model", sg_model, "diag|quadratic");
  sg_curve->add_option("--a", sg_a);
  sg_curve->add_option("--degree", sg_degree);
  sg_curve->add_option("--t", sg_range, "range start [end]")->expected(1, 2);
  sg_curve->add_option("--steps", sg_steps);
  sg_curve->add_option("--csv", sg_csv, "CSV output path (default stdout)");

  // ---- cert ----
  auto* ct = app.add_subcommand("cert", "positivity certificates");
  ct->require_subcommand(1);
  std::string ct_poly;
  std::vector<double> ct_interval{0.0, 1.0};
  int ct_cap = 200;
  auto* ct_bern = ct->add_subcommand("bernstein");
  ct_bern->add_option("--poly", ct_poly)->required();
  ct_bern->add_option("--cap", ct_cap, "degree cap");
  auto* ct_sos = ct->add_subcommand("sos");
  ct_sos->add_option("--poly", ct_poly)->required();
  auto* ct_luk = ct->add_subcommand("lukacs");
  ct_luk->add_option("--poly", ct_poly)->required();
  ct_luk->add_option("--interval", ct_interval, "interval endpoints a b")->expected(2);

  // ---- reproduce ----
  auto* re = app.add_subcommand("reproduce", "regenerate the worked-example data");
  re->require_subcommand(1);
  std::string re_csv;
  auto* re71 = re->add_subcommand("prop71");
  re71->add_option("--csv", re_csv, "sigma3 curve CSV path");
  auto* re73 = re->add_subcommand("prop73");
  re73->add_option("--csv", re_csv, "boundary curve CSV path");
  auto* re74 = re->add_subcommand("exm74");
  re74->add_option("--csv", re_csv, "minima curve CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (op_extract->parsed()) {
      Json j = load_json(op_images);
      int n = j.at("n").get<int>();
      int d = j.at("D").get<int>();
      std::map<MultiIndex, Polynomial, GradedLex> images;
      for (const auto& e : j.at("images"))
        images.emplace(e.at("alpha").get<MultiIndex>(), polynomial_from_json(e.at("poly")));
      auto action = [&](const Polynomial& p) {
        Polynomial out(n);
        for (const auto& [alpha, c] : p.terms()) {
          auto it = images.find(alpha);
          if (it == images.end()) throw std::runtime_error("missing monomial image");
          out += it->second * c;
        }
        return out;
      };
      emit(to_json(extract_canonical(action, n, d)), out_path);
    } else if (op_apply->parsed()) {
      OperatorSeries t = operator_series_from_json(load_json(op_file));
      emit(to_json(t.apply(polynomial_from_json(load_json(op_poly)))), out_path);
    } else if (op_diag->parsed()) {
      OperatorSeries t = operator_series_from_json(load_json(op_file));
      auto r = to_diagonal(t);
      if (std::holds_alternative<DiagonalOperator>(r)) {
        const auto& d = std::get<DiagonalOperator>(r);
        Json tj = Json::array(), cj = Json::array();
        for (const auto& [a, v] : d.t) tj.push_back(Json{{"alpha", a}, {"value", rational_to_json(v)}});
        for (const auto& [a, v] : d.c) cj.push_back(Json{{"alpha", a}, {"value", rational_to_json(v)}});
        emit(Json{{"diagonal", true}, {"t", tj}, {"c", cj}}, out_path);
      } else {
        emit(Json{{"diagonal", false},
                  {"violating_monomial", std::get<NotDiagonal>(r).violating_monomial}},
             out_path);
      }
    } else if (cg_mul->parsed()) {
      emit(to_json(const_series_from_json(load_json(cg_a)) * const_series_from_json(load_json(cg_b))),
           out_path);
    } else if (cg_inv->parsed()) {
      emit(to_json(inverse(const_series_from_json(load_json(cg_a)))), out_path);
    } else if (cg_exp->parsed()) {
      emit(to_json(exp_series(const_series_from_json(load_json(cg_a)))), out_path);
    } else if (cg_log->parsed()) {
      emit(to_json(log_series(const_series_from_json(load_json(cg_a)))), out_path);
    } else if (mo_check->parsed()) {
      SequenceQ s = sequence_from_json(load_json(mo_seq));
      if (s.n != 1) throw std::runtime_error("moment checks are one-dimensional");
      auto v = as_1d(s);
      Json j;
      if (mo_test == "hamburger") {
        auto rep = hamburger_check(v);
        if (!mo_csv.empty()) emit_text(hankel_csv(rep), mo_csv);
        j = to_json(rep);
      } else if (mo_test == "stieltjes") {
        auto rep = stieltjes_check(v);
        if (!mo_csv.empty()) emit_text(hankel_csv(rep.base) + hankel_csv(rep.shifted), mo_csv);
        j = to_json(rep);
      } else if (mo_test == "hausdorff") {
        auto rep = hausdorff_check<Rational>(v, rational_reconstruct(mo_interval[0]),
                                             rational_reconstruct(mo_interval[1]));
        j = to_json(rep);
      } else {
        throw CLI::ValidationError("--test must be hamburger|stieltjes|hausdorff");
      }
      emit(j, out_path);
    } else if (mo_conv->parsed()) {
      emit(to_json(convolve(sequence_from_json(load_json(mo_a)), sequence_from_json(load_json(mo_b)))),
           out_path);
    } else if (mo_had->parsed()) {
      emit(to_json(hadamard(sequence_from_json(load_json(mo_a)), sequence_from_json(load_json(mo_b)))),
           out_path);
    } else if (mo_rec->parsed()) {
      SequenceQ s = sequence_from_json(load_json(mo_seq));
      auto rec = recover_atoms(as_1d(s), mo_k);
      Json j{{"atom_count", rec.atom_count}, {"reduced", rec.reduced}, {"exact", rec.exact}};
      j["measure"] = rec.exact ? to_json(rec.rational_measure) : to_json(rec.measure);
      emit(j, out_path);
    } else if (pr_check->parsed()) {
      OperatorSeries t = operator_series_from_json(load_json(pr_op));
      if (pr_order >= 0 && pr_order < t.order()) {
        OperatorSeries cut(t.dimension(), pr_order);
        for (const auto& [alpha, q] : t.coefficients())
          if (order_of(alpha) <= pr_order) cut.set_coefficient(alpha, q);
        t = cut;
      }
      KDomain k = parse_domain(pr_k, pr_a, pr_lo, pr_hi, t.dimension());
      CheckConfig cfg;
      if (!pr_grid.empty()) cfg.grid = parse_grid(pr_grid, t.dimension());
      emit(to_json(check_preserver(t, k, cfg)), out_path);
    } else if (pr_res->parsed()) {
      OperatorSeries t = operator_series_from_json(load_json(pr_op));
      emit(to_json(check_resolvent(t, pr_d, parse_rational_list(pr_lambdas))), out_path);
    } else if (pr_gen->parsed()) {
      OperatorSeries t = operator_series_from_json(load_json(pr_op));
      KDomain k = parse_domain(pr_k, pr_a, pr_lo, pr_hi, t.dimension());
      CheckConfig cfg;
      if (!pr_grid.empty()) cfg.grid = parse_grid(pr_grid, t.dimension());
      emit(to_json(check_generator(t, k, cfg)), out_path);
    } else if (sg_evolve->parsed()) {
      OperatorSeries t = operator_series_from_json(load_json(sg_op));
      Polynomial p = polynomial_from_json(load_json(sg_poly));
      auto action = [&](const Polynomial& q) { return t.apply(q); };
      emit(to_json(evolve(action, p, sg_t)), out_path);
    } else if (sg_tau->parsed()) {
      Json j;
      if (sg_model == "diag") {
        auto rep = cubic_diagonal_model(sg_degree).analyze(0.0, 0.05, 400);
        j = to_json(rep);
      } else if (sg_model == "quadratic") {
        auto rep = eventual_quadratic(sg_a, 0.0, 200.0);
        j = to_json(rep);
      } else {
        throw CLI::ValidationError("--model must be diag|quadratic");
      }
      emit(j, out_path);
    } else if (sg_curve->parsed()) {
      double sg_tlo = sg_range.front();
      double sg_thi = sg_range.size() > 1 ? sg_range.back() : sg_range.front() + 25.0;
      std::vector<std::pair<double, double>> samples;
      if (sg_model == "quadratic") {
        double a2 = sg_a * sg_a;
        double start = std::max(sg_tlo, 1e-9);
        for (int i = 0; i <= sg_steps; ++i) {
          double t = start + (sg_thi - start) * i / sg_steps;
          samples.emplace_back(t, quadratic_min(a2, t));
        }
      } else if (sg_model == "diag") {
        auto model = cubic_diagonal_model(sg_degree);
        for (int i = 0; i <= sg_steps; ++i) {
          double t = sg_tlo + (sg_thi - sg_tlo) * i / sg_steps;
          samples.emplace_back(t, model.sigma_min(model.orders() - 1, t));
        }
      } else {
        throw CLI::ValidationError("--model must be diag|quadratic");
      }
      emit_text(curve_csv(samples), sg_csv.empty() ? out_path : sg_csv);
    } else if (ct_bern->parsed()) {
      Polynomial p = polynomial_from_json(load_json(ct_poly));
      emit(to_json(bernstein_certificate(p, ct_cap)), out_path);
    } else if (ct_sos->parsed()) {
      Polynomial p = polynomial_from_json(load_json(ct_poly));
      emit(to_json(sos_decompose_R(p)), out_path);
    } else if (ct_luk->parsed()) {
      Polynomial p = polynomial_from_json(load_json(ct_poly));
      emit(to_json(lukacs_markov(p, ct_interval[0], ct_interval[1])), out_path);
    } else if (re71->parsed()) {
      emit(reproduce_prop71(re_csv), out_path);
    } else if (re73->parsed()) {
      emit(reproduce_prop73(re_csv), out_path);
    } else if (re74->parsed()) {
      emit(reproduce_exm74(re_csv), out_path);
    }
  } catch (const Json::exception& e) {
    std::cerr << "json error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
