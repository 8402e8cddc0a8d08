// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_REALIZATION_HPP
#define CNPFACT_REALIZATION_HPP

#include <vector>

#include "cnpfact/core.hpp"
#include "cnpfact/fock.hpp"
#include "cnpfact/words.hpp"

namespace cnpfact {

/// State-space form of a column of free series:
///
///   coefficient of xi_a in entry n = (C A_{a_1} ... A_{a_k} B)_n.
///
/// Evaluated at a commuting point z the series sums to C (I - sum z_i A_i)^{-1} B.
struct FreeRealization {
  enum class Kind {
    Polynomial,  // A_i e_g = e_{ig} on words of length <= depth; nilpotent
    Diagonal,    // every A_i diagonal
    General,
  };

  Kind kind = Kind::General;
  int d = 1;
  int depth = 0;                 // Polynomial only: longest state word
  std::vector<MatrixX> A;        // d matrices, state x state
  VectorX B;                     // state
  MatrixX C;                     // N x state
  std::vector<std::vector<int>> prepend;  // Polynomial only: index of i g or -1

  int states() const { return static_cast<int>(B.size()); }
  int outputs() const { return static_cast<int>(C.rows()); }

  /// A_{a_1} ... A_{a_k} B.
  VectorX state_of(const Word& a) const;
  VectorX coefficient(const Word& a) const { return C * state_of(a); }
  /// Column value at a commuting point of the open ball.
  VectorX evaluate(const VectorX& z) const;

  /// sum_i A_i^* X A_i.
  MatrixX adjoint_shift(const MatrixX& X) const;
};

/// Realization of a column of free polynomials of length <= depth.
FreeRealization realize_polynomial_column(const std::vector<FreeVector>& column);

/// Realization of the column f_n = sum_j coeffs(n, j) K_{u_j}, where
/// K_u = sum_a conj(u)^a xi_a is the free Szego kernel at u (rows of `points`).
FreeRealization realize_kernel_column(const MatrixX& points, const MatrixX& coeffs);

/// Solves Z = Q + sum_i A_i^* Z A_i.
MatrixX stein(const FreeRealization& r, const MatrixX& Q);

/// Cyclic factor F of the column in state-space form: F_a = ell A_a B.
struct OuterFactor {
  RowVectorX ell;
  /// ||P_W Ft|| for the wandering space of the generated invariant subspace; equals |F_empty|.
  double gap = 0.0;
  /// gaps[k] is the wandering gap obtained from shifts of word length <= k only.
  std::vector<double> truncated_gaps;
  int fixed_point_iterations = 0;
  int newton_steps = 0;
  /// Largest violation of the moment equations, relative to ||Ft||^2.
  double moment_residual = 0.0;
};

struct OuterFactorOptions {
  int min_depth = 0;          // always record truncated gaps up to this depth
  int max_iterations = 2000;
  bool polish = true;         // Gauss-Newton on the moment equations
};

OuterFactor solve_outer_factor(const FreeRealization& r, const OuterFactorOptions& options = {});

/// Coefficients of F on the state words (Polynomial kind) as a free vector.
FreeVector outer_polynomial(const FreeRealization& r, const OuterFactor& f);

}  // namespace cnpfact

#endif  // CNPFACT_REALIZATION_HPP
