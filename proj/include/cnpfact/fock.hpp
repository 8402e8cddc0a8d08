// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_FOCK_HPP
#define CNPFACT_FOCK_HPP

#include <map>

#include <Eigen/SparseCore>

#include "cnpfact/core.hpp"
#include "cnpfact/words.hpp"

namespace cnpfact {

/// Which creation operators a word acts through.
///
/// Left:  L_i xi_a = xi_{i a}   (prepend), L_a = L_{a_1} ... L_{a_k}, so L_a xi_b = xi_{a b}.
/// Right: R_i xi_a = xi_{a i}   (append),  R_a xi_b = xi_{b a}.
/// With these conventions the transpose unitary W satisfies W L_a W* = R_{transpose(a)}.
enum class Side { Left, Right };

/// Element of the Fock space truncated to words of length <= degree.
/// Sparse: only nonzero coefficients are stored.
class FreeVector {
 public:
  using Terms = std::map<Word, Scalar>;

  FreeVector(int d, int degree);
  static FreeVector basis(int d, int degree, const Word& w);

  int d() const noexcept { return d_; }
  int degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }

  Scalar coeff(const Word& w) const;
  void set(const Word& w, Scalar value);
  void add(const Word& w, Scalar value);

  /// Length of the longest word with a nonzero coefficient, or -1 for zero.
  int max_length() const;
  /// Length of the shortest word with a nonzero coefficient, or -1 for zero.
  int order() const;
  bool is_zero() const { return terms_.empty(); }

  double squared_norm() const;
  double norm() const;

  /// Same coefficients with a new degree cap; words longer than the cap are dropped.
  FreeVector with_degree(int degree) const;

  Eigen::VectorXcd to_dense() const;
  static FreeVector from_dense(int d, int degree, const Eigen::VectorXcd& v);

  FreeVector& operator+=(const FreeVector& o);
  FreeVector& operator-=(const FreeVector& o);
  FreeVector& operator*=(Scalar s);
  friend FreeVector operator+(FreeVector a, const FreeVector& b) { return a += b; }
  friend FreeVector operator-(FreeVector a, const FreeVector& b) { return a -= b; }
  friend FreeVector operator*(Scalar s, FreeVector a) { return a *= s; }
  friend FreeVector operator*(FreeVector a, Scalar s) { return a *= s; }

 private:
  void check_word(const Word& w) const;

  int d_;
  int degree_;
  Terms terms_;
};

/// Finitely supported free polynomial sum c_a X_a with X = L or R.
class FreePoly {
 public:
  using Terms = std::map<Word, Scalar>;

  FreePoly(int d, Side side);
  static FreePoly identity(int d, Side side);
  static FreePoly monomial(const Word& w, Side side, Scalar c = 1.0);

  int d() const noexcept { return d_; }
  Side side() const noexcept { return side_; }
  const Terms& terms() const noexcept { return terms_; }
  Scalar coeff(const Word& w) const;
  void add(const Word& w, Scalar value);
  int max_length() const;

  friend FreePoly operator+(FreePoly a, const FreePoly& b);

 private:
  int d_;
  Side side_;
  Terms terms_;
};

/// Result of an operator that truncates at the degree cap.
struct Truncated {
  FreeVector vector;
  double dropped_squared_norm = 0.0;
};

Truncated create(int letter, const FreeVector& v, Side side);
FreeVector create_adjoint(int letter, const FreeVector& v, Side side);
Scalar inner(const FreeVector& v, const FreeVector& w);
FreeVector transpose_unitary(const FreeVector& v);
Truncated apply_poly(const FreePoly& p, const FreeVector& v);

/// Creation by a whole word: prepends (Left) or appends (Right) `w`.
Truncated create_word(const Word& w, const FreeVector& v, Side side);

// Matrices on the graded basis of all words of length <= degree.
using SparseMatrix = Eigen::SparseMatrix<Scalar>;

SparseMatrix creation_matrix(int letter, Side side, int d, int degree);
SparseMatrix word_creation_matrix(const Word& w, Side side, int d, int degree);
SparseMatrix transpose_matrix(int d, int degree);

/// Product in the free algebra, truncated: (a b)_g = sum_{x y = g} a_x b_y.
/// Equals a(L) applied to b, and b(R) applied to a with the transpose rule.
FreeVector free_product(const FreeVector& a, const FreeVector& b, int degree);

/// The series q with q * den = num through words of length <= degree.
/// Requires den to have a nonzero constant coefficient.
FreeVector right_divide(const FreeVector& num, const FreeVector& den, int degree,
                        std::size_t cap = kDefaultBasisCap);

}  // namespace cnpfact

#endif  // CNPFACT_FOCK_HPP
