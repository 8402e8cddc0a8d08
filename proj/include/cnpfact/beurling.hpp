// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_BEURLING_HPP
#define CNPFACT_BEURLING_HPP

#include <vector>

#include "cnpfact/core.hpp"
#include "cnpfact/fock.hpp"
#include "cnpfact/symfock.hpp"

namespace cnpfact {

/// Element of the Fock space tensored with C^N: N free vectors sharing (d, degree).
struct ColumnTuple {
  std::vector<FreeVector> entries;

  int d() const { return entries.front().d(); }
  int degree() const { return entries.front().degree(); }
  int max_length() const;
  double squared_norm() const;
  ColumnTuple with_degree(int degree) const;
  /// Stacked coefficients: entry n occupies block n of basis_size(d, degree) rows.
  VectorX to_dense() const;
  static ColumnTuple from_dense(int d, int degree, std::size_t count, const VectorX& v);
};

/// (R_a (x) I) applied to every entry, truncated at the common degree.
ColumnTuple shift_right(const ColumnTuple& t, const Word& a);

struct SubspaceBasis {
  std::vector<ColumnTuple> vectors;  // orthonormal
  int generator_depth = 0;
  int ambient = 0;
  double rank_tol = 1e-10;
};

/// Orthonormal basis of span{(R_a (x) I) Ft : |a| <= Dm} inside words of length
/// <= ambient. Vectors are produced by Gram-Schmidt in generator order; a
/// generator is kept when its residual exceeds rank_tol times the largest
/// singular value of the generator matrix.
SubspaceBasis generate_invariant_subspace(const ColumnTuple& Ft, int Dm, int ambient = -1,
                                          double rank_tol = 1e-10);

struct Wandering {
  ColumnTuple w;      // unit vector
  double gap = 0.0;   // ||P_W Ft||
  /// ||Ft||^2 - gap^2 - ||projection onto the shifted span||^2.
  double pythagoras_defect = 0.0;
};

/// Component of Ft orthogonal to the shifts of word length 1..generator_depth.
/// Throws Tolerance when the gap is at most tol * ||Ft||.
Wandering wandering_subspace(const SubspaceBasis& basis, const ColumnTuple& Ft, double tol = 1e-10);

/// phi_n = sum_a w^{(n)}_a L_a.
std::vector<FreePoly> extract_column_multiplier(const ColumnTuple& w);

struct CyclicSolve {
  FreeVector F{1, 0};
  double residual = 0.0;     // ||M_phi F - Ft|| on words of length <= interior
  double condition = 0.0;
};

/// Least-squares F with M_phi F = Ft, unknowns on words of length <= ambient - ord(phi).
/// `interior` < 0 means the longest word in Ft.
CyclicSolve solve_cyclic_factor(const std::vector<FreePoly>& phi, const ColumnTuple& Ft,
                                int interior = -1, double condition_cap = 1e12);

struct FactorOptions {
  int ambient = -1;        // default: input degree + Dm
  /// true: exact cyclic factor from the state-space fixed point.
  /// false: literal truncated wandering vector plus least squares.
  bool refine = true;
  int cyclic_depth = 6;
  double tol = 1e-8;
  double rank_tol = 1e-10;
  std::size_t cap = kDefaultBasisCap;
};

struct FactorDiagnostics {
  double column_norm = 0.0;     // compressed to the ambient degree
  double F_norm_sq = 0.0;
  double input_norm_sq = 0.0;
  double max_residual = 0.0;    // max_n ||phi_n F - f_n|| on degrees <= input degree
  double wandering_gap = 0.0;
  double cyclic_residual = 0.0;
  double truncated_gap = 0.0;   // gap from shifts of length <= Dm only
  double moment_residual = 0.0;
  int input_degree = 0;
  int ambient = 0;
  int dm = 0;
  bool refined = true;
};

struct FactorizationT1 {
  std::vector<SymVector> phi;
  SymVector F{1, 0};
  FactorDiagnostics diagnostics;
  ColumnTuple w;          // free wandering vector
  FreeVector free_F{1, 0};
};

FactorizationT1 factor_sequence(const std::vector<SymVector>& fs, int Dm, const FactorOptions& options = {});

/// Distance from 1 to span{z^n F : |n| <= Dc}, products taken without truncation.
double check_cyclic(const SymVector& F, int Dc);

}  // namespace cnpfact

#endif  // CNPFACT_BEURLING_HPP
