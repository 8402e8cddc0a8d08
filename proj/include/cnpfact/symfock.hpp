// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_SYMFOCK_HPP
#define CNPFACT_SYMFOCK_HPP

#include <map>

#include "cnpfact/core.hpp"
#include "cnpfact/fock.hpp"
#include "cnpfact/words.hpp"

namespace cnpfact {

/// Polynomial in the Drury-Arveson space, truncated at total degree `degree`.
///
/// The monomials are orthogonal with ||z^n||^2 = n! / |n|!, the weights
/// obtained by expanding the kernel 1 / (1 - <z, w>) in powers of <z, w>.
class SymVector {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  SymVector(int d, int degree);
  static SymVector constant(int d, int degree, Scalar c);
  static SymVector monomial(const MultiIndex& n, int degree, Scalar c = 1.0);

  int d() const noexcept { return d_; }
  int degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }

  Scalar coeff(const MultiIndex& n) const;
  void set(const MultiIndex& n, Scalar value);
  void add(const MultiIndex& n, Scalar value);

  /// Largest total degree carrying a nonzero coefficient; -1 for zero.
  int max_total() const;
  bool is_zero() const { return terms_.empty(); }

  SymVector with_degree(int degree) const;

  SymVector& operator+=(const SymVector& o);
  SymVector& operator-=(const SymVector& o);
  SymVector& operator*=(Scalar s);
  friend SymVector operator+(SymVector a, const SymVector& b) { return a += b; }
  friend SymVector operator-(SymVector a, const SymVector& b) { return a -= b; }
  friend SymVector operator*(Scalar s, SymVector a) { return a *= s; }
  friend SymVector operator*(SymVector a, Scalar s) { return a *= s; }

 private:
  void check_index(const MultiIndex& n) const;

  int d_;
  int degree_;
  Terms terms_;
};

/// ||z^n||^2 in the Drury-Arveson space.
double monomial_norm_sq(const MultiIndex& n);

double da_norm(const SymVector& h);
Scalar da_inner(const SymVector& f, const SymVector& g);

/// Commutative image of a free vector: coefficient of z^n is the sum of
/// coefficients over all words with letter count n. A co-isometry.
SymVector evaluate_fock(const FreeVector& v);

/// Adjoint of evaluate_fock: z^n -> (n!/|n|!) sum_{letter_count(a) = n} xi_a.
/// Isometric, and evaluate_fock(lift_min_norm(h)) == h.
FreeVector lift_min_norm(const SymVector& h, std::size_t cap = kDefaultBasisCap);

/// Coefficientwise product truncated to total degree `out_degree`.
SymVector mult_sym(const SymVector& f, const SymVector& g, int out_degree);

/// The series q with q g = f through total degree `out_degree`; g(0) must be nonzero.
SymVector divide_sym(const SymVector& f, const SymVector& g, int out_degree);

/// Sum h_n z^n at a point of the open unit ball.
Scalar point_eval(const SymVector& h, const VectorX& z);

/// Coefficients restricted to total degree <= max_degree.
SymVector truncate_degree(const SymVector& h, int max_degree);

}  // namespace cnpfact

#endif  // CNPFACT_SYMFOCK_HPP
