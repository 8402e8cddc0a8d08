// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_CNP_HPP
#define CNPFACT_CNP_HPP

#include <string>
#include <vector>

#include "cnpfact/core.hpp"
#include "cnpfact/symfock.hpp"

namespace cnpfact {

/// Finite sample E of a space with kernel 1 / (1 - <u(x), u(y)>), stored
/// through the embedded coordinates u(x_j) (rows of `points`).
class CNPSpace {
 public:
  CNPSpace(MatrixX points, std::vector<std::string> labels = {});

  int d() const { return static_cast<int>(points_.cols()); }
  int size() const { return static_cast<int>(points_.rows()); }
  const MatrixX& points() const { return points_; }
  const std::vector<std::string>& labels() const { return labels_; }
  VectorX point(int j) const { return points_.row(j).transpose(); }

 private:
  MatrixX points_;
  std::vector<std::string> labels_;
};

/// sum_j coeffs_j k(., x_j).
struct SampledFunction {
  VectorX coeffs;
};

MatrixX kernel_matrix(const CNPSpace& space);

/// Values (f(x_1), ..., f(x_m)).
VectorX sample_values(const CNPSpace& space, const SampledFunction& s);
double sampled_norm(const CNPSpace& space, const SampledFunction& s);

struct Restriction {
  SampledFunction function;
  double condition = 0.0;   // of the kernel matrix
  int rank = 0;
};

/// Minimal-norm interpolant of h on the sample: G c = h|_E solved with a
/// pseudo-inverse at relative eigenvalue threshold 1e-12.
Restriction restrict(const SymVector& h, const CNPSpace& space);

/// Degree-D Taylor truncation of sum_j c_j / (1 - <z, u_j>).
SymVector extend_min_norm(const CNPSpace& space, const SampledFunction& s, int D);
/// Bound on the norm of the discarded tail of the extension.
double extension_tail_bound(const CNPSpace& space, const SampledFunction& s, int D);

struct CNPOptions {
  int degree = 25;          // Taylor truncation of the extended series
  int cyclic_depth = 6;
  double tol = 1e-8;
};

struct CNPDiagnostics {
  double pointwise_error = 0.0;   // max |phi_n(x_j) F(x_j) - f_n(x_j)|, truncated series
  double F_norm_sq = 0.0;
  double input_norm_sq = 0.0;
  double column_pick_min_eigenvalue = 0.0;
  double wandering_gap = 0.0;
  double truncated_gap = 0.0;
  double cyclic_residual = 0.0;
  double moment_residual = 0.0;
  double tail_bound = 0.0;
};

struct CNPFactorization {
  SampledFunction F;            // F lies in the span of the sampled kernels
  MatrixX phi_values;           // (n, j) = phi_n(x_j)
  VectorX F_values;
  std::vector<SymVector> phi;   // Taylor truncations at options.degree
  SymVector F_series{1, 0};
  CNPDiagnostics diagnostics;
};

CNPFactorization factor_sequence_cnp(const CNPSpace& space, const std::vector<SampledFunction>& fs, int Dm,
                                     const CNPOptions& options = {});

}  // namespace cnpfact

#endif  // CNPFACT_CNP_HPP
