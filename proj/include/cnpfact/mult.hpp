// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_MULT_HPP
#define CNPFACT_MULT_HPP

#include <vector>

#include "cnpfact/core.hpp"
#include "cnpfact/symfock.hpp"

namespace cnpfact {

/// Tuple of multiplier symbols sharing d.
using MultTuple = std::vector<SymVector>;

/// Matrix of f -> phi f from H_{<=D} to H_{<=out_degree} in orthonormal monomial
/// bases (monomials of canonical order, each scaled to unit norm).
/// out_degree < 0 means D + max_total(phi), which loses nothing.
MatrixX mult_matrix(const SymVector& phi, int D, int out_degree = -1);

/// Largest singular value of the stacked matrices; a lower bound for the
/// column multiplier norm, nondecreasing in D.
double column_norm(const MultTuple& phi, int D);
/// Norm of P_{<=D} M_Phi P_{<=D}. Depends only on coefficients of degree <= D,
/// so a series truncated at D gives the compression of the full multiplier.
double compressed_column_norm(const MultTuple& phi, int D);
double row_norm(const MultTuple& phi, int D);

struct ColRowReport {
  double column_norm = 0.0;
  double row_norm = 0.0;
  double ratio = 0.0;
  int D = 0;
};

ColRowReport column_row_ratio(const MultTuple& phi, int D);

struct PickResult {
  bool positive = false;
  double min_eigenvalue = 0.0;
};

/// Tests [(bound^2 - phi(x_i) conj(phi(x_j))) k(x_i, x_j)] >= 0 at the rows of `points`.
PickResult pick_test(const SymVector& phi, const MatrixX& points, double bound);
/// Column version: [(bound^2 - sum_n phi_n(x_i) conj(phi_n(x_j))) k(x_i, x_j)] >= 0.
PickResult column_pick_test(const MultTuple& phi, const MatrixX& points, double bound);
/// Same test from precomputed values, values(n, i) = phi_n(x_i).
PickResult column_pick_test_values(const MatrixX& values, const MatrixX& points, double bound);

/// Szego kernel Gram matrix 1 / (1 - <x_i, x_j>) at the rows of `points`.
/// Rejects points outside the open ball or closer than 1e-6 to each other.
MatrixX szego_gram(const MatrixX& points);

}  // namespace cnpfact

#endif  // CNPFACT_MULT_HPP
