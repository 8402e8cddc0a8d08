// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/weakprod.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include "cnpfact/mult.hpp"

namespace cnpfact {
namespace {

int rep_dim(const WeakProductRep& rep) {
  if (rep.pairs.empty()) fail_input("empty_rep", "representation has no pairs");
  const int d = rep.pairs.front().first.d();
  for (const auto& [f, g] : rep.pairs)
    if (f.d() != d || g.d() != d) fail_input("dimension_mismatch", "pairs use different numbers of variables");
  return d;
}

int product_degree(const WeakProductRep& rep) {
  int deg = 0;
  for (const auto& [f, g] : rep.pairs)
    if (!f.is_zero() && !g.is_zero()) deg = std::max(deg, f.max_total() + g.max_total());
  return deg;
}

VectorX sample_point(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  VectorX z(d);
  for (int k = 0; k < d; ++k) z(k) = Scalar(normal(rng), normal(rng));
  const double radius = 0.5 * std::pow(uniform(rng), 1.0 / (2.0 * d));
  return z * (radius / z.norm());
}

}  // namespace

double rep_cost(const WeakProductRep& rep) {
  double s = 0.0;
  for (const auto& [f, g] : rep.pairs) s += da_norm(f) * da_norm(g);
  return s;
}

SymVector rep_sum(const WeakProductRep& rep) {
  const int d = rep_dim(rep);
  const int deg = product_degree(rep);
  SymVector h(d, deg);
  for (const auto& [f, g] : rep.pairs) h += mult_sym(f, g, deg);
  return h;
}

WeakProductRep balance(const WeakProductRep& rep) {
  rep_dim(rep);
  WeakProductRep out;
  for (const auto& [f, g] : rep.pairs) {
    const double nf = da_norm(f);
    const double ng = da_norm(g);
    if (nf == 0.0 || ng == 0.0) continue;
    const double t = std::sqrt(ng / nf);
    out.pairs.emplace_back(f * Scalar(t), g * Scalar(1.0 / t));
  }
  if (out.pairs.empty()) fail_input("zero_rep", "every pair has a zero factor");
  return out;
}

FactorizationT2 factor_weak_product(const WeakProductRep& rep, int Dm, const FactorOptions& options) {
  if (Dm < 1) fail_input("bad_depth", "Dm must be at least 1");
  const WeakProductRep bal = balance(rep);
  int k = 0;
  std::vector<SymVector> fs;
  std::vector<SymVector> gs;
  for (const auto& [f, g] : bal.pairs) {
    k = std::max({k, f.max_total(), g.max_total()});
    fs.push_back(f);
    gs.push_back(g);
  }
  FactorOptions opt = options;
  if (opt.ambient < 0) opt.ambient = 2 * k + Dm;
  const int ambient = opt.ambient;

  auto right = std::async(std::launch::async, [&] { return factor_sequence(gs, Dm, opt); });
  FactorizationT2 out;
  out.left = factor_sequence(fs, Dm, opt);
  out.right = right.get();

  const int d = fs.front().d();
  out.m = SymVector(d, ambient);
  for (std::size_t i = 0; i < fs.size(); ++i) out.m += mult_sym(out.left.phi[i], out.right.phi[i], ambient);
  out.f = mult_sym(out.m, out.left.F, ambient);
  out.g = out.right.F;

  ProductCertificates& c = out.certificates;
  const Verification v = verify_factorization(bal, out.f, out.g);
  c.residual = v.residual;
  c.point_residual = v.point_residual;
  c.rep_cost = rep_cost(bal);
  c.product_norm = da_norm(out.f) * da_norm(out.g);
  c.ratio = c.product_norm / c.rep_cost;
  c.m_norm_bound = compressed_column_norm({out.m}, ambient);
  return out;
}

Verification verify_factorization(const WeakProductRep& rep, const SymVector& f, const SymVector& g,
                                  std::optional<int> interior, std::uint64_t seed) {
  const int d = rep_dim(rep);
  if (f.d() != d || g.d() != d) fail_input("dimension_mismatch", "factors use a different number of variables");
  Verification out;
  out.interior = interior.value_or(product_degree(rep));
  if (out.interior < 0) fail_input("negative_degree", "interior degree must be non-negative");
  const SymVector h = rep_sum(rep);
  const SymVector fg = mult_sym(f, g, out.interior);
  out.residual = da_norm(truncate_degree(h, out.interior) - fg);

  std::mt19937_64 rng(seed);
  for (int s = 0; s < 10; ++s) {
    const VectorX z = sample_point(rng, d);
    out.point_residual = std::max(out.point_residual, std::abs(point_eval(h, z) - point_eval(f, z) * point_eval(g, z)));
  }
  return out;
}

}  // namespace cnpfact
