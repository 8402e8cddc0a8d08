// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/job.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cnpfact {
namespace {

struct Generator {
  std::mt19937_64 rng;
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;

  explicit Generator(std::uint64_t seed) : rng(seed) {}

  Scalar gaussian() { return {normal(rng) / std::sqrt(2.0), normal(rng) / std::sqrt(2.0)}; }

  SymVector polynomial(int d, int degree) {
    SymVector h(d, degree);
    for (const MultiIndex& n : enumerate_multi_indices(d, degree)) h.set(n, gaussian());
    return h;
  }

  MatrixX points(int count, int d, double radius) {
    MatrixX u(count, d);
    for (int j = 0; j < count; ++j) {
      VectorX z(d);
      for (int k = 0; k < d; ++k) z(k) = gaussian();
      u.row(j) = (z * (radius * std::pow(uniform(rng), 1.0 / (2.0 * d)) / z.norm())).transpose();
    }
    return u;
  }
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_input("unreadable_input", "cannot open input file " + path);
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail_input("malformed_json", e.what());
  }
}

void validate(const JobConfig& c) {
  static const char* commands[] = {"lift", "factor-seq", "factor-wp", "colrow", "kernel", "cnp-factor"};
  bool known = false;
  for (const char* k : commands) known = known || c.command == k;
  if (!known) fail_input("unknown_command", "unknown command '" + c.command + "'");
  if (c.d < 1) fail_input("bad_config", "--d must be at least 1");
  if (c.degree && *c.degree < 0) fail_input("bad_config", "--degree must be non-negative");
  if (c.dm && *c.dm < 1) fail_input("bad_config", "--dm must be at least 1");
  if (c.dc < 0) fail_input("bad_config", "--dc must be non-negative");
  if (!(c.tol > 0.0)) fail_input("bad_config", "--tol must be positive");
  if (c.cap == 0) fail_input("bad_config", "--cap must be positive");
}

int max_degree(const std::vector<SymVector>& fs) {
  int k = 0;
  for (const SymVector& f : fs) k = std::max(k, f.max_total());
  return k;
}

json config_json(const JobConfig& c) {
  json j = {{"command", c.command}, {"d", c.d}, {"dc", c.dc}, {"tol", c.tol}, {"seed", c.seed}, {"cap", c.cap}};
  if (!c.input.empty()) j["input"] = c.input;
  if (c.degree) j["degree"] = *c.degree;
  if (c.dm) j["dm"] = *c.dm;
  if (c.literal) j["literal"] = true;
  return j;
}

// Collects certificate failures; an empty list means the run passed.
struct Checks {
  std::vector<std::string> failed;
  void require(bool ok, const char* reason) {
    if (!ok) failed.emplace_back(reason);
  }
};

json run_lift(const JobConfig& c, const json* in, Generator& gen, json& input, Checks&) {
  const SymVector h = in ? sym_vector_from_json(*in) : gen.polynomial(c.d, c.degree.value_or(3));
  input = to_json(h);
  const FreeVector v = lift_min_norm(h, c.cap);
  return {{"lift", to_json(v)}, {"da_norm", da_norm(h)}, {"fock_norm", v.norm()}};
}

json run_factor_seq(const JobConfig& c, const json* in, Generator& gen, json& input, Checks& checks) {
  std::vector<SymVector> fs;
  if (in) {
    fs = sym_list_from_json(*in);
  } else {
    for (int n = 0; n < 3; ++n) fs.push_back(gen.polynomial(c.d, c.degree.value_or(2)));
  }
  json list = json::array();
  for (const SymVector& f : fs) list.push_back(to_json(f));
  input = {{"functions", list}};

  FactorOptions opt;
  opt.refine = !c.literal;
  opt.cyclic_depth = c.dc;
  opt.tol = c.tol;
  opt.cap = c.cap;
  const FactorizationT1 f = factor_sequence(fs, c.dm.value_or(max_degree(fs) + 2), opt);
  const FactorDiagnostics& g = f.diagnostics;
  const double scale = std::max(1.0, std::sqrt(g.input_norm_sq));
  checks.require(g.max_residual <= c.tol * scale, "max_residual_above_tolerance");
  checks.require(g.column_norm <= 1.0 + c.tol, "column_norm_above_one");
  checks.require(g.F_norm_sq <= g.input_norm_sq * (1.0 + c.tol), "F_norm_exceeds_input_norm");
  return to_json(f);
}

json run_factor_wp(const JobConfig& c, const json* in, Generator& gen, json& input, Checks& checks) {
  WeakProductRep rep;
  if (in) {
    rep = weak_product_from_json(*in);
  } else {
    for (int i = 0; i < 2; ++i)
      rep.pairs.emplace_back(gen.polynomial(c.d, c.degree.value_or(2)), gen.polynomial(c.d, c.degree.value_or(2)));
  }
  input = to_json(rep);
  int k = 0;
  for (const auto& [f, g] : rep.pairs) k = std::max({k, f.max_total(), g.max_total()});

  FactorOptions opt;
  opt.refine = !c.literal;
  opt.cyclic_depth = c.dc;
  opt.tol = c.tol;
  opt.cap = c.cap;
  const FactorizationT2 f = factor_weak_product(rep, c.dm.value_or(k + 2), opt);
  const ProductCertificates& cert = f.certificates;
  const double scale = std::max(1.0, da_norm(rep_sum(rep)));
  checks.require(cert.residual <= c.tol * scale, "residual_above_tolerance");
  json out = to_json(f);
  const bool constant_known = rep.pairs.front().first.d() == 1;
  out["certificates"]["constant_known"] = constant_known;
  if (constant_known) checks.require(cert.ratio <= 1.0 + 1e-6, "product_norm_exceeds_rep_cost");
  return out;
}

json run_colrow(const JobConfig& c, const json* in, Generator& gen, json& input, Checks&) {
  std::vector<SymVector> phi;
  if (in) {
    phi = sym_list_from_json(*in, "symbols");
  } else {
    for (int n = 0; n < 3; ++n) phi.push_back(gen.polynomial(c.d, 2));
  }
  json list = json::array();
  for (const SymVector& p : phi) list.push_back(to_json(p));
  input = {{"symbols", list}};
  const int D = c.degree.value_or(12);
  if (monomial_count(phi.front().d(), D + max_degree(phi)) * phi.size() > c.cap)
    throw Error(ErrorKind::ResourceCap, "basis_cap_exceeded", "multiplier matrices exceed the basis cap");
  json out = to_json(column_row_ratio(phi, D));
  out["note"] = "truncated norms are lower bounds; the ratio is empirical and certifies no constant";
  return out;
}

json run_kernel(const JobConfig& c, const json* in, Generator& gen, json& input, Checks&) {
  const CNPSpace space = in ? cnp_space_from_json(*in) : CNPSpace(gen.points(4, c.d, 0.5));
  input = to_json(space);
  const MatrixX g = kernel_matrix(space);
  Eigen::SelfAdjointEigenSolver<MatrixX> eig(g, Eigen::EigenvaluesOnly);
  const auto& lambda = eig.eigenvalues();
  json rows = json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(json::array({g(i, j).real(), g(i, j).imag()}));
    rows.push_back(row);
  }
  return {{"gram", rows},
          {"min_eigenvalue", lambda(0)},
          {"max_eigenvalue", lambda(lambda.size() - 1)},
          {"condition", lambda(0) > 0 ? lambda(lambda.size() - 1) / lambda(0) : INFINITY}};
}

json run_cnp(const JobConfig& c, const json* in, Generator& gen, json& input, Checks& checks) {
  std::optional<CNPSpace> space;
  std::vector<SampledFunction> fs;
  if (in) {
    space.emplace(cnp_space_from_json(in->at("space")));
    const json& list = in->at("functions");
    if (!list.is_array() || list.empty()) fail_input("schema_violation", "'functions' must be a nonempty array");
    for (const json& f : list) fs.push_back(sampled_function_from_json(f));
  } else {
    space.emplace(gen.points(5, c.d, 0.5));
    for (int n = 0; n < 2; ++n) {
      SampledFunction s;
      s.coeffs = VectorX(space->size());
      for (int j = 0; j < space->size(); ++j) s.coeffs(j) = gen.gaussian();
      fs.push_back(s);
    }
  }
  json list = json::array();
  for (const SampledFunction& f : fs) list.push_back(to_json(f));
  input = {{"space", to_json(*space)}, {"functions", list}};

  CNPOptions opt;
  opt.degree = c.degree.value_or(25);
  opt.cyclic_depth = c.dc;
  opt.tol = c.tol;
  if (monomial_count(space->d(), opt.degree + c.dc) > c.cap)
    throw Error(ErrorKind::ResourceCap, "basis_cap_exceeded", "Taylor truncation exceeds the basis cap");
  const CNPFactorization f = factor_sequence_cnp(*space, fs, c.dm.value_or(2), opt);
  double scale = 1.0;
  for (const SampledFunction& s : fs) scale = std::max(scale, sample_values(*space, s).cwiseAbs().maxCoeff());
  checks.require(f.diagnostics.pointwise_error <= 100.0 * c.tol * scale, "pointwise_error_above_tolerance");
  checks.require(f.diagnostics.column_pick_min_eigenvalue >= -c.tol, "column_pick_matrix_not_positive");
  json out = to_json(f);
  out["note"] = "cyclicity in the sampled space is not certifiable from finite data";
  return out;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void line(std::ostringstream& os, const std::string& name, const json& value) {
  char buf[160];
  const std::string text = value.is_number() ? fmt(value.get<double>()) : value.is_string() ? value.get<std::string>() : value.dump();
  std::snprintf(buf, sizeof buf, "  %-28s %s\n", name.c_str(), text.c_str());
  os << buf;
}

void lines(std::ostringstream& os, const json& obj, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (obj.contains(k)) line(os, k, obj.at(k));
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return kExitInvalid;
    case ErrorKind::Tolerance: return kExitTolerance;
    case ErrorKind::ResourceCap: return kExitResource;
  }
  return kExitInvalid;
}

JobResult run(const JobConfig& config) {
  JobResult out;
  out.report = {{"command", config.command}, {"status", "ok"}, {"config", config_json(config)}};
  try {
    validate(config);
    std::optional<json> in;
    if (!config.input.empty()) in = read_json(config.input);
    Generator gen(config.seed);
    json input;
    Checks checks;
    json result;
    const json* src = in ? &*in : nullptr;
    if (config.command == "lift") result = run_lift(config, src, gen, input, checks);
    else if (config.command == "factor-seq") result = run_factor_seq(config, src, gen, input, checks);
    else if (config.command == "factor-wp") result = run_factor_wp(config, src, gen, input, checks);
    else if (config.command == "colrow") result = run_colrow(config, src, gen, input, checks);
    else if (config.command == "kernel") result = run_kernel(config, src, gen, input, checks);
    else result = run_cnp(config, src, gen, input, checks);
    out.report["input"] = input;
    out.report["result"] = result;
    if (!checks.failed.empty()) {
      out.exit_code = kExitTolerance;
      out.report["status"] = "tolerance_failure";
      out.report["reason"] = checks.failed.front();
      out.report["failed_checks"] = checks.failed;
    }
  } catch (const Error& e) {
    out.exit_code = exit_code_for(e.kind());
    out.report["status"] = "error";
    out.report["reason"] = e.reason();
    out.report["message"] = e.what();
  } catch (const nlohmann::json::exception& e) {
    out.exit_code = kExitInvalid;
    out.report["status"] = "error";
    out.report["reason"] = "schema_violation";
    out.report["message"] = e.what();
  } catch (const std::bad_alloc&) {
    out.exit_code = kExitResource;
    out.report["status"] = "error";
    out.report["reason"] = "out_of_memory";
  }
  return out;
}

std::string report_render(const json& report) {
  std::ostringstream os;
  const std::string command = report.value("command", std::string("?"));
  os << "command: " << command << "\n";
  os << "status:  " << report.value("status", std::string("?")) << "\n";
  if (report.contains("reason")) os << "reason:  " << report.at("reason").get<std::string>() << "\n";
  if (!report.contains("result")) return os.str();
  const json& r = report.at("result");

  if (command == "factor-seq") {
    lines(os, r.at("diagnostics"), {"column_norm", "F_norm_sq", "input_norm_sq", "max_residual", "wandering_gap",
                                    "truncated_gap", "cyclic_residual", "moment_residual", "ambient", "dm"});
  } else if (command == "factor-wp") {
    const json& c = r.at("certificates");
    lines(os, c, {"residual", "product_norm", "rep_cost", "m_norm_bound", "point_residual"});
    os << "  product_norm / rep_cost = " << fmt(c.at("ratio").get<double>()) << "\n";
  } else if (command == "colrow") {
    lines(os, r, {"column_norm", "row_norm", "ratio", "D"});
    lines(os, r, {"note"});
  } else if (command == "lift") {
    lines(os, r, {"da_norm", "fock_norm"});
    line(os, "terms", static_cast<double>(r.at("lift").at("terms").size()));
  } else if (command == "kernel") {
    lines(os, r, {"min_eigenvalue", "max_eigenvalue", "condition"});
    line(os, "points", static_cast<double>(r.at("gram").size()));
  } else if (command == "cnp-factor") {
    lines(os, r.at("diagnostics"), {"pointwise_error", "F_norm_sq", "input_norm_sq", "column_pick_min_eigenvalue",
                                    "wandering_gap", "truncated_gap", "cyclic_residual", "tail_bound"});
  }
  return os.str();
}

}  // namespace cnpfact
