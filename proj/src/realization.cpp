// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/realization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cnpfact {
namespace {

// Sum_i conj(a_ji) a_li for diagonal A_i, stored as a dense kernel.
MatrixX diagonal_kernel(const FreeRealization& r) {
  const int m = r.states();
  MatrixX k = MatrixX::Zero(m, m);
  for (const MatrixX& a : r.A) {
    VectorX diag = a.diagonal();
    k += diag.conjugate() * diag.transpose();
  }
  return k;
}

double max_abs(const MatrixX& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

VectorX FreeRealization::state_of(const Word& a) const {
  VectorX v = B;
  for (std::size_t k = a.length(); k-- > 0;) v = A[static_cast<std::size_t>(a[k] - 1)] * v;
  return v;
}

VectorX FreeRealization::evaluate(const VectorX& z) const {
  if (z.size() != d) fail_input("dimension_mismatch", "point has the wrong number of coordinates");
  if (z.squaredNorm() >= 1.0) fail_input("point_outside_ball", "evaluation point must lie in the open unit ball");
  MatrixX m = MatrixX::Identity(states(), states());
  for (int i = 0; i < d; ++i) m -= z(i) * A[static_cast<std::size_t>(i)];
  return C * m.partialPivLu().solve(B);
}

MatrixX FreeRealization::adjoint_shift(const MatrixX& X) const {
  const int m = states();
  switch (kind) {
    case Kind::Polynomial: {
      MatrixX y = MatrixX::Zero(m, m);
      for (const auto& map : prepend)
        for (int h = 0; h < m; ++h) {
          const int ph = map[static_cast<std::size_t>(h)];
          if (ph < 0) continue;
          for (int g = 0; g < m; ++g) {
            const int pg = map[static_cast<std::size_t>(g)];
            if (pg >= 0) y(g, h) += X(pg, ph);
          }
        }
      return y;
    }
    case Kind::Diagonal:
      return X.cwiseProduct(diagonal_kernel(*this));
    case Kind::General:
      break;
  }
  MatrixX y = MatrixX::Zero(m, m);
  for (const MatrixX& a : A) y += a.adjoint() * X * a;
  return y;
}

FreeRealization realize_polynomial_column(const std::vector<FreeVector>& column) {
  if (column.empty()) fail_input("empty_column", "column must have at least one entry");
  const int d = column.front().d();
  int depth = 0;
  for (const FreeVector& v : column) {
    if (v.d() != d) fail_input("dimension_mismatch", "column entries use different alphabets");
    depth = std::max(depth, v.max_length());
  }
  const std::vector<Word> words = enumerate_words(d, depth);
  const int m = static_cast<int>(words.size());

  FreeRealization r;
  r.kind = FreeRealization::Kind::Polynomial;
  r.d = d;
  r.depth = depth;
  r.B = VectorX::Zero(m);
  r.B(0) = 1.0;
  r.C = MatrixX::Zero(static_cast<Eigen::Index>(column.size()), m);
  for (std::size_t n = 0; n < column.size(); ++n)
    for (const auto& [w, c] : column[n].terms())
      r.C(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(graded_index(w))) = c;

  r.prepend.assign(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(m), -1));
  r.A.assign(static_cast<std::size_t>(d), MatrixX::Zero(m, m));
  for (int g = 0; g < m; ++g) {
    const Word& w = words[static_cast<std::size_t>(g)];
    if (static_cast<int>(w.length()) >= depth) continue;
    for (int i = 0; i < d; ++i) {
      const int target = static_cast<int>(graded_index(w.prepended(i + 1)));
      r.prepend[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)] = target;
      r.A[static_cast<std::size_t>(i)](target, g) = 1.0;
    }
  }
  return r;
}

FreeRealization realize_kernel_column(const MatrixX& points, const MatrixX& coeffs) {
  const int m = static_cast<int>(points.rows());
  const int d = static_cast<int>(points.cols());
  if (m == 0 || d == 0) fail_input("empty_space", "kernel column needs at least one point");
  if (coeffs.cols() != m) fail_input("dimension_mismatch", "coefficient matrix does not match the point count");
  FreeRealization r;
  r.kind = FreeRealization::Kind::Diagonal;
  r.d = d;
  r.B = VectorX::Ones(m);
  r.C = coeffs;
  for (int i = 0; i < d; ++i) r.A.push_back(points.col(i).conjugate().asDiagonal().toDenseMatrix());
  return r;
}

MatrixX stein(const FreeRealization& r, const MatrixX& Q) {
  switch (r.kind) {
    case FreeRealization::Kind::Polynomial: {
      MatrixX z = Q;
      for (int k = 0; k < r.depth; ++k) z = Q + r.adjoint_shift(z);
      return z;
    }
    case FreeRealization::Kind::Diagonal: {
      const MatrixX k = diagonal_kernel(r);
      return Q.cwiseQuotient((MatrixX::Ones(k.rows(), k.cols()) - k));
    }
    case FreeRealization::Kind::General:
      break;
  }
  MatrixX z = Q;
  for (int it = 0; it < 100000; ++it) {
    MatrixX next = Q + r.adjoint_shift(z);
    const double change = max_abs(next - z);
    z = std::move(next);
    if (change <= 1e-15 * std::max(1.0, max_abs(z))) return z;
  }
  throw Error(ErrorKind::Tolerance, "stein_not_converged",
              "Stein iteration did not converge; the realization is not strictly contractive");
}

namespace {

// Moment equations B^*(stein(ell^* ell) - P) = 0 with the gauge Im(ell B) = 0,
// as a real vector.
Eigen::VectorXd moment_residual(const FreeRealization& r, const MatrixX& P, const RowVectorX& ell) {
  const int m = r.states();
  const RowVectorX e = r.B.adjoint() * (stein(r, ell.adjoint() * ell) - P);
  Eigen::VectorXd out(2 * m + 1);
  out.head(m) = e.real().transpose();
  out.segment(m, m) = e.imag().transpose();
  out(2 * m) = (ell * r.B)(0).imag();
  return out;
}

Eigen::MatrixXd moment_jacobian(const FreeRealization& r, const RowVectorX& ell) {
  const int m = r.states();
  Eigen::MatrixXd jac(2 * m + 1, 2 * m);
  for (int j = 0; j < 2 * m; ++j) {
    RowVectorX dl = RowVectorX::Zero(m);
    dl(j % m) = j < m ? Scalar(1.0) : Scalar(0.0, 1.0);
    const MatrixX q = dl.adjoint() * ell + ell.adjoint() * dl;
    const RowVectorX de = r.B.adjoint() * stein(r, q);
    jac.col(j).head(m) = de.real().transpose();
    jac.col(j).segment(m, m) = de.imag().transpose();
    jac(2 * m, j) = (dl * r.B)(0).imag();
  }
  return jac;
}

}  // namespace

OuterFactor solve_outer_factor(const FreeRealization& r, const OuterFactorOptions& options) {
  const int m = r.states();
  const MatrixX P = stein(r, r.C.adjoint() * r.C);
  const double scale = (r.B.adjoint() * P * r.B)(0).real();
  if (!(scale > 0.0)) fail_input("zero_column", "cannot factor the zero column");

  OuterFactor out;
  MatrixX X = MatrixX::Zero(m, m);
  RowVectorX ell = RowVectorX::Zero(m);
  for (int it = 0; it <= options.max_iterations; ++it) {
    const MatrixX Y = r.adjoint_shift(X);
    const MatrixX M = P - Y;
    const double g2 = (r.B.adjoint() * M * r.B)(0).real();
    if (!(g2 > 1e-300)) {
      // The truncated wandering space has collapsed; keep the last iterate.
      out.truncated_gaps.push_back(0.0);
      break;
    }
    const RowVectorX next = (r.B.adjoint() * M) / std::sqrt(g2);
    out.truncated_gaps.push_back(std::sqrt(g2));
    const double change = (next - ell).norm();
    ell = next;
    X = Y + ell.adjoint() * ell;
    out.fixed_point_iterations = it;
    if (it >= options.min_depth && change <= 1e-13 * std::sqrt(scale)) break;
  }

  if (options.polish) {
    Eigen::VectorXd res = moment_residual(r, P, ell);
    double best = res.cwiseAbs().maxCoeff();
    for (int step = 0; step < 50 && best > 1e-15 * scale; ++step) {
      const Eigen::MatrixXd jac = moment_jacobian(r, ell);
      const Eigen::VectorXd dx = jac.colPivHouseholderQr().solve(-res);
      RowVectorX delta(m);
      for (int j = 0; j < m; ++j) delta(j) = Scalar(dx(j), dx(m + j));
      bool improved = false;
      for (double t = 1.0; t > 1e-4; t *= 0.5) {
        const RowVectorX trial = ell + t * delta;
        const Eigen::VectorXd trial_res = moment_residual(r, P, trial);
        const double size = trial_res.cwiseAbs().maxCoeff();
        if (size < best) {
          ell = trial;
          res = trial_res;
          best = size;
          improved = true;
          break;
        }
      }
      if (!improved) break;
      out.newton_steps = step + 1;
    }
  }

  Scalar lead = (ell * r.B)(0);
  if (lead.real() < 0) {
    ell = -ell;
    lead = -lead;
  }
  out.ell = ell;
  out.gap = std::abs(lead);
  out.moment_residual = moment_residual(r, P, ell).cwiseAbs().maxCoeff() / scale;
  return out;
}

FreeVector outer_polynomial(const FreeRealization& r, const OuterFactor& f) {
  if (r.kind != FreeRealization::Kind::Polynomial)
    fail_input("not_polynomial", "outer factor is a polynomial only for polynomial realizations");
  FreeVector out(r.d, r.depth);
  for (int g = 0; g < r.states(); ++g) out.set(word_at(static_cast<std::size_t>(g), r.d), f.ell(g));
  return out;
}

}  // namespace cnpfact
