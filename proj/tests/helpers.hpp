// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_TESTS_HELPERS_HPP
#define CNPFACT_TESTS_HELPERS_HPP

#include <random>
#include <vector>

#include "cnpfact/fock.hpp"
#include "cnpfact/symfock.hpp"

namespace testing {

using cnpfact::MultiIndex;
using cnpfact::Scalar;
using cnpfact::SymVector;
using cnpfact::Word;

inline Scalar gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng)};
}

/// Dense random polynomial with i.i.d. complex Gaussian coefficients.
inline SymVector random_poly(std::mt19937_64& rng, int d, int degree) {
  SymVector h(d, degree);
  for (const MultiIndex& n : cnpfact::enumerate_multi_indices(d, degree)) h.set(n, gaussian(rng));
  return h;
}

inline SymVector mono(std::vector<int> n, int degree, Scalar c = 1.0) {
  return SymVector::monomial(MultiIndex(std::move(n)), degree, c);
}

/// Maximum coefficient difference between two polynomials.
inline double coeff_distance(const SymVector& a, const SymVector& b) {
  double m = 0.0;
  for (const auto& [n, c] : a.terms()) m = std::max(m, std::abs(c - b.coeff(n)));
  for (const auto& [n, c] : b.terms()) m = std::max(m, std::abs(c - a.coeff(n)));
  return m;
}

inline Eigen::MatrixXcd dense(const cnpfact::SparseMatrix& m) { return Eigen::MatrixXcd(m); }

}  // namespace testing

#endif  // CNPFACT_TESTS_HELPERS_HPP
