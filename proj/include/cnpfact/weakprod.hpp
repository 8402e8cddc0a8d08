// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_WEAKPROD_HPP
#define CNPFACT_WEAKPROD_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cnpfact/beurling.hpp"
#include "cnpfact/symfock.hpp"

namespace cnpfact {

/// h = sum_i f_i g_i.
struct WeakProductRep {
  std::vector<std::pair<SymVector, SymVector>> pairs;
};

/// sum_i ||f_i|| ||g_i||.
double rep_cost(const WeakProductRep& rep);

/// The represented function sum_i f_i g_i, untruncated.
SymVector rep_sum(const WeakProductRep& rep);

/// Drops pairs with a zero factor and rescales each pair so ||f_i|| = ||g_i||.
WeakProductRep balance(const WeakProductRep& rep);

struct ProductCertificates {
  double residual = 0.0;        // ||h - f g|| on degrees <= deg h
  double product_norm = 0.0;    // ||f|| ||g||
  double rep_cost = 0.0;
  double ratio = 0.0;           // product_norm / rep_cost
  double m_norm_bound = 0.0;    // compressed multiplier norm of m, a lower bound
  double point_residual = 0.0;  // max |h(x) - f(x) g(x)| at sample points
};

struct FactorizationT2 {
  SymVector f{1, 0};
  SymVector g{1, 0};
  SymVector m{1, 0};
  ProductCertificates certificates;
  FactorizationT1 left;    // factorization of the f_i column
  FactorizationT1 right;   // factorization of the g_i column
};

/// Single-product factorization h = f g of a weak-product representation.
/// The ambient degree defaults to 2 * (max input degree) + Dm.
FactorizationT2 factor_weak_product(const WeakProductRep& rep, int Dm, const FactorOptions& options = {});

struct Verification {
  double residual = 0.0;
  double point_residual = 0.0;
  int interior = 0;
};

/// Compares sum_i f_i g_i with f g on total degrees <= interior (default:
/// the degree of the represented function) and at 10 seeded random points
/// of norm <= 0.5.
Verification verify_factorization(const WeakProductRep& rep, const SymVector& f, const SymVector& g,
                                  std::optional<int> interior = std::nullopt, std::uint64_t seed = 0);

}  // namespace cnpfact

#endif  // CNPFACT_WEAKPROD_HPP
