// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/cnp.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cnpfact/beurling.hpp"
#include "cnpfact/mult.hpp"
#include "cnpfact/realization.hpp"

namespace cnpfact {
namespace {

void check_function(const CNPSpace& space, const SampledFunction& s) {
  if (s.coeffs.size() != space.size())
    fail_input("dimension_mismatch", "sampled function needs one coefficient per point");
}

}  // namespace

CNPSpace::CNPSpace(MatrixX points, std::vector<std::string> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (points_.rows() == 0 || points_.cols() == 0) fail_input("empty_space", "space needs at least one point");
  if (labels_.empty())
    for (Eigen::Index j = 0; j < points_.rows(); ++j) labels_.push_back("p" + std::to_string(j));
  if (static_cast<Eigen::Index>(labels_.size()) != points_.rows())
    fail_input("dimension_mismatch", "one label per point is required");
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    if (points_.row(i).squaredNorm() >= 1.0)
      fail_input("point_outside_ball", "embedded points must lie in the open unit ball");
    for (Eigen::Index j = 0; j < i; ++j)
      if ((points_.row(i) - points_.row(j)).norm() < 1e-6)
        fail_input("coincident_points", "embedded points closer than 1e-6 are not allowed");
  }
}

MatrixX kernel_matrix(const CNPSpace& space) { return szego_gram(space.points()); }

VectorX sample_values(const CNPSpace& space, const SampledFunction& s) {
  check_function(space, s);
  return kernel_matrix(space) * s.coeffs;
}

double sampled_norm(const CNPSpace& space, const SampledFunction& s) {
  check_function(space, s);
  const double sq = (s.coeffs.adjoint() * kernel_matrix(space) * s.coeffs)(0).real();
  return std::sqrt(std::max(0.0, sq));
}

Restriction restrict(const SymVector& h, const CNPSpace& space) {
  if (h.d() != space.d()) fail_input("dimension_mismatch", "function and space use different dimensions");
  VectorX values(space.size());
  for (int j = 0; j < space.size(); ++j) values(j) = point_eval(h, space.point(j));

  Eigen::SelfAdjointEigenSolver<MatrixX> eig(kernel_matrix(space));
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = lambda(lambda.size() - 1);
  VectorX proj = eig.eigenvectors().adjoint() * values;
  Restriction out;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda(k) > 1e-12 * top) {
      proj(k) /= lambda(k);
      ++out.rank;
    } else {
      proj(k) = 0.0;
    }
  }
  out.function.coeffs = eig.eigenvectors() * proj;
  out.condition = lambda(0) > 0 ? top / lambda(0) : INFINITY;
  return out;
}

SymVector extend_min_norm(const CNPSpace& space, const SampledFunction& s, int D) {
  check_function(space, s);
  SymVector out(space.d(), D);
  for (const MultiIndex& n : enumerate_multi_indices(space.d(), D)) {
    Scalar acc = 0;
    for (int j = 0; j < space.size(); ++j) {
      Scalar mono = 1.0;
      for (int k = 0; k < space.d(); ++k) mono *= std::pow(std::conj(space.points()(j, k)), n[static_cast<std::size_t>(k)]);
      acc += s.coeffs(j) * mono;
    }
    out.set(n, acc * multinomial(n));
  }
  return out;
}

double extension_tail_bound(const CNPSpace& space, const SampledFunction& s, int D) {
  check_function(space, s);
  double bound = 0.0;
  for (int j = 0; j < space.size(); ++j) {
    const double r2 = space.points().row(j).squaredNorm();
    bound += std::abs(s.coeffs(j)) * std::sqrt(std::pow(r2, D + 1) / (1.0 - r2));
  }
  return bound;
}

CNPFactorization factor_sequence_cnp(const CNPSpace& space, const std::vector<SampledFunction>& fs, int Dm,
                                     const CNPOptions& options) {
  if (fs.empty()) fail_input("empty_sequence", "at least one function is required");
  if (Dm < 1) fail_input("bad_depth", "Dm must be at least 1");
  const int m = space.size();
  MatrixX coeffs(static_cast<Eigen::Index>(fs.size()), m);
  for (std::size_t n = 0; n < fs.size(); ++n) {
    check_function(space, fs[n]);
    coeffs.row(static_cast<Eigen::Index>(n)) = fs[n].coeffs.transpose();
  }

  const FreeRealization real = realize_kernel_column(space.points(), coeffs);
  OuterFactorOptions oopt;
  oopt.min_depth = Dm;
  const OuterFactor outer = solve_outer_factor(real, oopt);

  CNPFactorization out;
  CNPDiagnostics& diag = out.diagnostics;
  diag.wandering_gap = outer.gap;
  diag.truncated_gap = outer.truncated_gaps[std::min<std::size_t>(static_cast<std::size_t>(Dm),
                                                                   outer.truncated_gaps.size() - 1)];
  diag.moment_residual = outer.moment_residual;
  for (const SampledFunction& f : fs) diag.input_norm_sq += std::pow(sampled_norm(space, f), 2);
  if (outer.gap <= options.tol * std::sqrt(diag.input_norm_sq))
    throw Error(ErrorKind::Tolerance, "wandering_gap_below_tolerance",
                "wandering component of the input is numerically zero");

  const MatrixX gram = kernel_matrix(space);
  out.F.coeffs = outer.ell.transpose();
  out.F_values = gram * out.F.coeffs;
  if (out.F_values.cwiseAbs().minCoeff() <= options.tol * out.F_values.cwiseAbs().maxCoeff())
    throw Error(ErrorKind::Tolerance, "factor_vanishes_on_sample", "cyclic factor vanishes at a sample point");
  const MatrixX values = coeffs * gram.transpose();   // (n, j) = f_n(x_j)
  out.phi_values = values * out.F_values.cwiseInverse().asDiagonal();

  out.F_series = extend_min_norm(space, out.F, options.degree);
  for (const SampledFunction& f : fs)
    out.phi.push_back(divide_sym(extend_min_norm(space, f, options.degree), out.F_series, options.degree));

  // Phase: first significant Taylor coefficient of phi, by monomial then entry, is real positive.
  double largest = 0.0;
  for (const SymVector& p : out.phi)
    for (const auto& [n, c] : p.terms()) largest = std::max(largest, std::abs(c));
  const MultiIndex* best = nullptr;
  Scalar lead = 1.0;
  for (const SymVector& p : out.phi)
    for (const auto& [n, c] : p.terms())
      if (std::abs(c) > 1e-12 * largest) {
        if (best == nullptr || n < *best) {
          best = &n;
          lead = c;
        }
        break;
      }
  const Scalar unit = std::abs(lead) / lead;
  for (SymVector& p : out.phi) p *= unit;
  out.phi_values *= unit;
  out.F.coeffs *= std::conj(unit);
  out.F_values *= std::conj(unit);
  out.F_series *= std::conj(unit);

  for (int j = 0; j < m; ++j) {
    const VectorX x = space.point(j);
    const Scalar fx = point_eval(out.F_series, x);
    for (std::size_t n = 0; n < fs.size(); ++n)
      diag.pointwise_error = std::max(diag.pointwise_error,
                                      std::abs(point_eval(out.phi[n], x) * fx - values(static_cast<Eigen::Index>(n), j)));
  }
  diag.F_norm_sq = std::pow(sampled_norm(space, out.F), 2);
  diag.column_pick_min_eigenvalue = column_pick_test_values(out.phi_values, space.points(), 1.0).min_eigenvalue;
  diag.cyclic_residual = check_cyclic(out.F_series, options.cyclic_depth);
  diag.tail_bound = extension_tail_bound(space, out.F, options.degree);
  for (const SampledFunction& f : fs)
    diag.tail_bound = std::max(diag.tail_bound, extension_tail_bound(space, f, options.degree));
  return out;
}

}  // namespace cnpfact
