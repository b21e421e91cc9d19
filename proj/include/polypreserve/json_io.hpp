#pragma once

#include <json.hpp>

#include "polypreserve/atomic_measure.hpp"
#include "polypreserve/certificates.hpp"
#include "polypreserve/const_series.hpp"
#include "polypreserve/eventual.hpp"
#include "polypreserve/moment_checks.hpp"
#include "polypreserve/operator_series.hpp"
#include "polypreserve/polynomial.hpp"
#include "polypreserve/preserver.hpp"
#include "polypreserve/semigroup.hpp"
#include "polypreserve/sequences.hpp"

namespace polypreserve {

using Json = nlohmann::json;

// Rationals travel as "num/den" strings; plain JSON numbers are accepted on
// input and converted exactly when they are integers, via decimal otherwise.
inline Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1) {
    if (q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(q.get_num().get_str());
  }
  return Json(q.get_num().get_str() + "/" + q.get_den().get_str());
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  if (j.is_number_float()) return rational_from_string(std::to_string(j.get<double>()));
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw std::invalid_argument("expected rational value");
}

inline Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [alpha, c] : p.terms()) {
    terms.push_back(Json{{"alpha", alpha}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  }
  return Json{{"n", p.dimension()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const Json& j) {
  Polynomial p(j.at("n").get<int>());
  for (const auto& t : j.at("terms")) {
    MultiIndex alpha = t.at("alpha").get<MultiIndex>();
    Rational c = frac(Integer(t.at("num").get<std::string>()), Integer(t.at("den").get<std::string>()));
    p.add_term(alpha, c);
  }
  return p;
}

inline Json to_json(const OperatorSeries& t) {
  Json coeffs = Json::array();
  for (const auto& [alpha, q] : t.coefficients()) coeffs.push_back(Json{{"alpha", alpha}, {"poly", to_json(q)}});
  return Json{{"n", t.dimension()}, {"order", t.order()}, {"coeffs", coeffs}};
}

inline OperatorSeries operator_series_from_json(const Json& j) {
  OperatorSeries t(j.at("n").get<int>(), j.at("order").get<int>());
  for (const auto& c : j.at("coeffs"))
    t.set_coefficient(c.at("alpha").get<MultiIndex>(), polynomial_from_json(c.at("poly")));
  return t;
}

inline Json to_json(const ConstSeries& s) { return to_json(s.as_operator()); }

inline ConstSeries const_series_from_json(const Json& j) {
  OperatorSeries t = operator_series_from_json(j);
  ConstSeries s(t.dimension(), t.order());
  for (const auto& [alpha, q] : t.coefficients()) {
    if (q.degree() && *q.degree() > 0) throw std::invalid_argument("series coefficient is not constant");
    s.set(alpha, q.coefficient(zero_index(t.dimension())));
  }
  return s;
}

inline Json to_json(const SequenceQ& s) {
  Json values = Json::array();
  for (const auto& [alpha, v] : s.values) values.push_back(Json{{"alpha", alpha}, {"value", rational_to_json(v)}});
  return Json{{"n", s.n}, {"N", s.order}, {"values", values}};
}

inline Json to_json(const SequenceD& s) {
  Json values = Json::array();
  for (const auto& [alpha, v] : s.values) values.push_back(Json{{"alpha", alpha}, {"value", v}});
  return Json{{"n", s.n}, {"N", s.order}, {"values", values}};
}

inline SequenceQ sequence_from_json(const Json& j) {
  SequenceQ s(j.at("n").get<int>(), j.at("N").get<int>());
  for (const auto& v : j.at("values")) s.set(v.at("alpha").get<MultiIndex>(), rational_from_json(v.at("value")));
  return s;
}

inline Json to_json(const AtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms) {
    Json point = Json::array();
    for (const auto& c : a.point) point.push_back(rational_to_json(c));
    atoms.push_back(Json{{"point", point}, {"weight", rational_to_json(a.weight)}});
  }
  return Json{{"atoms", atoms}};
}

inline Json to_json(const NumericAtomicMeasure& mu) {
  Json atoms = Json::array();
  for (const auto& a : mu.atoms) atoms.push_back(Json{{"point", a.point}, {"weight", a.weight}});
  return Json{{"atoms", atoms}};
}

inline AtomicMeasure atomic_measure_from_json(const Json& j) {
  const auto& atoms = j.at("atoms");
  if (atoms.empty()) return AtomicMeasure(1);
  AtomicMeasure mu(static_cast<int>(atoms.front().at("point").size()));
  for (const auto& a : atoms) {
    std::vector<Rational> p;
    for (const auto& c : a.at("point")) p.push_back(rational_from_json(c));
    mu.add_atom(std::move(p), rational_from_json(a.at("weight")));
  }
  return mu;
}

inline Json to_json(const HankelReport& r) {
  Json orders = Json::array();
  for (const auto& o : r.orders)
    orders.push_back(Json{{"order", o.order},
                          {"min_eigenvalue", o.min_eigenvalue},
                          {"tolerance", o.tolerance},
                          {"verdict", to_string(o.verdict)}});
  return Json{{"orders", orders},
              {"pass", r.pass},
              {"borderline", r.borderline},
              {"first_fail_order", r.first_fail_order}};
}

inline Json to_json(const HalflineReport& r) {
  return Json{{"base", to_json(r.base)}, {"shifted", to_json(r.shifted)}, {"pass", r.pass}};
}

template <class T>
Json to_json(const HausdorffReport<T>& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json v;
    if constexpr (std::is_same_v<T, Rational>)
      v = rational_to_json(e.value);
    else
      v = e.value;
    entries.push_back(Json{{"m", e.m}, {"p", e.p}, {"value", v}, {"ok", e.ok}});
  }
  return Json{{"entries", entries}, {"pass", r.pass}, {"witness_m", r.witness_m}, {"witness_p", r.witness_p}};
}

inline Json to_json(const PreserverVerdict& v) {
  Json j{{"verdict", v.pass ? "pass-necessary" : "fail"},
         {"borderline", v.borderline},
         {"necessary_only", v.necessary_only},
         {"note", v.note}};
  if (v.witness) {
    Json y = Json::array();
    for (const auto& c : v.witness->y) y.push_back(rational_to_json(c));
    j["witness"] = Json{{"y", y},
                        {"axis", v.witness->axis},
                        {"family", v.witness->family},
                        {"hankel_order", v.witness->hankel_order},
                        {"diff_m", v.witness->diff_m},
                        {"diff_p", v.witness->diff_p}};
  }
  return j;
}

inline Json to_json(const ResolventReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"lambda", rational_to_json(e.lambda)},
                           {"singular", e.singular},
                           {"spectral_window", e.spectral_window},
                           {"pass", e.pass},
                           {"verdict", to_json(e.verdict)}});
  Json j{{"entries", entries}};
  if (r.last_pass) j["last_pass"] = rational_to_json(*r.last_pass);
  if (r.first_fail) j["first_fail"] = rational_to_json(*r.first_fail);
  return j;
}

inline Json to_json(const EventualReport& r) {
  Json j{{"classification", to_string(r.classification)}};
  if (r.bracket_valid) {
    j["lo"] = r.lo;
    j["hi"] = r.hi;
    j["criterion_lo"] = r.criterion_lo;
    j["criterion_hi"] = r.criterion_hi;
  }
  return j;
}

inline Json to_json(const NumericPolynomial& p) {
  Json terms = Json::array();
  for (const auto& [alpha, c] : p.terms) terms.push_back(Json{{"alpha", alpha}, {"value", c}});
  return Json{{"n", p.n}, {"terms", terms}};
}

inline Json to_json(const BernsteinResult& r) {
  if (std::holds_alternative<BernsteinCert>(r)) {
    const auto& c = std::get<BernsteinCert>(r);
    Json coeffs = Json::array();
    for (const auto& [kl, v] : c.coeffs)
      coeffs.push_back(Json{{"k", kl.first}, {"l", kl.second}, {"coeff", rational_to_json(v)}});
    return Json{{"certified", true}, {"degree", c.degree}, {"coeffs", coeffs}, {"residual", 0.0}};
  }
  const auto& f = std::get<BernsteinRefusal>(r);
  return Json{{"certified", false},
              {"reason", f.negative_witness ? "negative value" : "unknown past degree cap"},
              {"witness", rational_to_json(f.witness)},
              {"degree_cap", f.degree_cap}};
}

inline Json to_json(const SosResult& r) {
  if (std::holds_alternative<CertRefusal>(r)) {
    const auto& f = std::get<CertRefusal>(r);
    return Json{{"certified", false}, {"reason", f.reason}, {"witness", f.witness}};
  }
  const auto& c = std::get<SosCert>(r);
  const char* form = c.form == SosCert::Form::sum_two_squares
                         ? "f^2+g^2"
                         : (c.form == SosCert::Form::even_interval ? "f^2+(x-a)(b-x)g^2"
                                                                   : "(x-a)f^2+(b-x)g^2");
  Json j{{"certified", true}, {"form", form}, {"f", c.f}, {"g", c.g},
         {"residual", c.residual}, {"exact", c.exact}};
  if (c.form != SosCert::Form::sum_two_squares) {
    j["a"] = c.a;
    j["b"] = c.b;
  }
  return j;
}

inline std::string hankel_csv(const HankelReport& r) {
  std::string out = "order,min_eigenvalue,verdict\n";
  char buf[64];
  for (const auto& o : r.orders) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%s\n", o.order, o.min_eigenvalue, to_string(o.verdict));
    out += buf;
  }
  return out;
}

inline std::string curve_csv(const std::vector<std::pair<double, double>>& samples) {
  std::string out = "t,criterion\n";
  char buf[96];
  for (const auto& [t, v] : samples) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", t, v);
    out += buf;
  }
  return out;
}

}  // namespace polypreserve
