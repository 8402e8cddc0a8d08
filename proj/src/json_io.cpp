// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/json_io.hpp"

#include <string>

namespace cnpfact {
namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::InvalidInput, "schema_violation", what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) schema(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double number(const json& v, const char* what) {
  if (!v.is_number()) schema(std::string(what) + " must be a number");
  return v.get<double>();
}

json complex_pair(Scalar c) { return json::array({c.real(), c.imag()}); }

Scalar complex_from_pair(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) schema("complex numbers are [re, im] pairs");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Scalar term_value(const json& t) {
  const double re = t.contains("re") ? number(t.at("re"), "re") : 0.0;
  const double im = t.contains("im") ? number(t.at("im"), "im") : 0.0;
  return {re, im};
}

json complex_list(const VectorX& v) {
  json out = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(complex_pair(v(k)));
  return out;
}

json complex_matrix(const MatrixX& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(complex_list(m.row(r).transpose()));
  return out;
}

template <class T>
T wrap(auto&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    schema(e.what());
  }
}

}  // namespace

json word_to_json(const Word& w) { return json(w.letters()); }

Word word_from_json(const json& j, int d) {
  if (!j.is_array()) schema("words are arrays of letters");
  std::vector<int> letters;
  for (const json& l : j) {
    if (!l.is_number_integer()) schema("letters must be integers");
    letters.push_back(l.get<int>());
  }
  return Word(std::move(letters), d);
}

json multi_index_to_json(const MultiIndex& n) { return json(n.exponents()); }

MultiIndex multi_index_from_json(const json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) schema("multi-index must have one entry per variable");
  std::vector<int> e;
  for (const json& x : j) {
    if (!x.is_number_integer() || x.get<int>() < 0) schema("exponents must be non-negative integers");
    e.push_back(x.get<int>());
  }
  return MultiIndex(std::move(e));
}

json to_json(const FreeVector& v) {
  json terms = json::array();
  for (const auto& [w, c] : v.terms())
    terms.push_back({{"word", word_to_json(w)}, {"re", c.real()}, {"im", c.imag()}});
  return {{"d", v.d()}, {"degree", v.degree()}, {"terms", terms}};
}

FreeVector free_vector_from_json(const json& j) {
  FreeVector v(int_field(j, "d"), int_field(j, "degree"));
  const json& terms = field(j, "terms");
  if (!terms.is_array()) schema("'terms' must be an array");
  for (const json& t : terms) v.add(word_from_json(field(t, "word"), v.d()), term_value(t));
  return v;
}

json to_json(const SymVector& h) {
  json terms = json::array();
  for (const auto& [n, c] : h.terms())
    terms.push_back({{"n", multi_index_to_json(n)}, {"re", c.real()}, {"im", c.imag()}});
  return {{"d", h.d()}, {"degree", h.degree()}, {"terms", terms}};
}

SymVector sym_vector_from_json(const json& j) {
  SymVector h(int_field(j, "d"), int_field(j, "degree"));
  const json& terms = field(j, "terms");
  if (!terms.is_array()) schema("'terms' must be an array");
  for (const json& t : terms) h.add(multi_index_from_json(field(t, "n"), h.d()), term_value(t));
  return h;
}

json to_json(const FactorizationT1& f) {
  const FactorDiagnostics& g = f.diagnostics;
  json phi = json::array();
  for (const SymVector& p : f.phi) phi.push_back(to_json(p));
  return {{"phi", phi},
          {"F", to_json(f.F)},
          {"diagnostics",
           {{"column_norm", g.column_norm},
            {"F_norm_sq", g.F_norm_sq},
            {"input_norm_sq", g.input_norm_sq},
            {"max_residual", g.max_residual},
            {"wandering_gap", g.wandering_gap},
            {"cyclic_residual", g.cyclic_residual},
            {"truncated_gap", g.truncated_gap},
            {"moment_residual", g.moment_residual},
            {"input_degree", g.input_degree},
            {"ambient", g.ambient},
            {"dm", g.dm},
            {"refined", g.refined}}}};
}

json to_json(const FactorizationT2& f) {
  const ProductCertificates& c = f.certificates;
  return {{"f", to_json(f.f)},
          {"g", to_json(f.g)},
          {"m", to_json(f.m)},
          {"certificates",
           {{"residual", c.residual},
            {"product_norm", c.product_norm},
            {"rep_cost", c.rep_cost},
            {"ratio", c.ratio},
            {"m_norm_bound", c.m_norm_bound},
            {"point_residual", c.point_residual}}}};
}

json to_json(const ColRowReport& r) {
  return {{"column_norm", r.column_norm}, {"row_norm", r.row_norm}, {"ratio", r.ratio}, {"D", r.D}};
}

json to_json(const CNPSpace& space) {
  json points = json::array();
  for (int j = 0; j < space.size(); ++j)
    points.push_back({{"label", space.labels()[static_cast<std::size_t>(j)]}, {"u", complex_list(space.point(j))}});
  return {{"d", space.d()}, {"points", points}};
}

CNPSpace cnp_space_from_json(const json& j) {
  const int d = int_field(j, "d");
  if (d < 1) schema("'d' must be positive");
  const json& points = field(j, "points");
  if (!points.is_array() || points.empty()) schema("'points' must be a nonempty array");
  MatrixX u(static_cast<Eigen::Index>(points.size()), d);
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const json& p = points[k];
    labels.push_back(p.contains("label") ? wrap<std::string>([&] { return p.at("label").get<std::string>(); })
                                         : "p" + std::to_string(k));
    const json& coords = field(p, "u");
    if (!coords.is_array() || static_cast<int>(coords.size()) != d) schema("each point needs d coordinates");
    for (int i = 0; i < d; ++i) u(static_cast<Eigen::Index>(k), i) = complex_from_pair(coords[static_cast<std::size_t>(i)]);
  }
  return CNPSpace(std::move(u), std::move(labels));
}

json to_json(const SampledFunction& s) { return {{"coeffs", complex_list(s.coeffs)}}; }

SampledFunction sampled_function_from_json(const json& j) {
  const json& c = j.is_array() ? j : field(j, "coeffs");
  if (!c.is_array()) schema("'coeffs' must be an array");
  SampledFunction s;
  s.coeffs = VectorX(static_cast<Eigen::Index>(c.size()));
  for (std::size_t k = 0; k < c.size(); ++k) s.coeffs(static_cast<Eigen::Index>(k)) = complex_from_pair(c[k]);
  return s;
}

json to_json(const CNPFactorization& f) {
  const CNPDiagnostics& g = f.diagnostics;
  return {{"F", to_json(f.F)},
          {"F_values", complex_list(f.F_values)},
          {"phi_values", complex_matrix(f.phi_values)},
          {"diagnostics",
           {{"pointwise_error", g.pointwise_error},
            {"F_norm_sq", g.F_norm_sq},
            {"input_norm_sq", g.input_norm_sq},
            {"column_pick_min_eigenvalue", g.column_pick_min_eigenvalue},
            {"wandering_gap", g.wandering_gap},
            {"truncated_gap", g.truncated_gap},
            {"cyclic_residual", g.cyclic_residual},
            {"moment_residual", g.moment_residual},
            {"tail_bound", g.tail_bound}}}};
}

json to_json(const WeakProductRep& rep) {
  json pairs = json::array();
  for (const auto& [f, g] : rep.pairs) pairs.push_back({{"f", to_json(f)}, {"g", to_json(g)}});
  return {{"pairs", pairs}};
}

WeakProductRep weak_product_from_json(const json& j) {
  const json& pairs = j.is_array() ? j : field(j, "pairs");
  if (!pairs.is_array() || pairs.empty()) schema("'pairs' must be a nonempty array");
  WeakProductRep rep;
  for (const json& p : pairs) {
    if (p.is_array() && p.size() == 2)
      rep.pairs.emplace_back(sym_vector_from_json(p[0]), sym_vector_from_json(p[1]));
    else
      rep.pairs.emplace_back(sym_vector_from_json(field(p, "f")), sym_vector_from_json(field(p, "g")));
  }
  return rep;
}

std::vector<SymVector> sym_list_from_json(const json& j, const char* key) {
  const json& list = j.is_array() ? j : field(j, key);
  if (!list.is_array() || list.empty()) schema(std::string("'") + key + "' must be a nonempty array");
  std::vector<SymVector> out;
  for (const json& h : list) out.push_back(sym_vector_from_json(h));
  return out;
}

}  // namespace cnpfact
