// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/mult.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cnpfact {
namespace {

struct MonomialBasis {
  std::vector<MultiIndex> list;
  std::map<MultiIndex, Eigen::Index> index;
  std::vector<double> norm;
};

MonomialBasis monomial_basis(int d, int degree) {
  MonomialBasis b;
  b.list = enumerate_multi_indices(d, degree);
  for (std::size_t k = 0; k < b.list.size(); ++k) {
    b.index.emplace(b.list[k], static_cast<Eigen::Index>(k));
    b.norm.push_back(std::sqrt(monomial_norm_sq(b.list[k])));
  }
  return b;
}

int tuple_dim(const MultTuple& phi) {
  if (phi.empty()) fail_input("empty_tuple", "multiplier tuple must be nonempty");
  const int d = phi.front().d();
  for (const SymVector& p : phi)
    if (p.d() != d) fail_input("dimension_mismatch", "multiplier symbols use different numbers of variables");
  return d;
}

int tuple_degree(const MultTuple& phi) {
  int deg = 0;
  for (const SymVector& p : phi) deg = std::max(deg, p.max_total());
  return deg;
}

double largest_singular_value(const MatrixX& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<MatrixX> svd(m);
  return svd.singularValues()(0);
}

MatrixX mult_block(const SymVector& phi, const MonomialBasis& in, const MonomialBasis& out) {
  MatrixX m = MatrixX::Zero(static_cast<Eigen::Index>(out.list.size()),
                            static_cast<Eigen::Index>(in.list.size()));
  for (std::size_t c = 0; c < in.list.size(); ++c)
    for (const auto& [k, coef] : phi.terms()) {
      auto it = out.index.find(in.list[c] + k);
      if (it == out.index.end()) continue;
      m(it->second, static_cast<Eigen::Index>(c)) =
          coef * out.norm[static_cast<std::size_t>(it->second)] / in.norm[c];
    }
  return m;
}

MatrixX stacked(const MultTuple& phi, int D, int out_degree) {
  const int d = tuple_dim(phi);
  const MonomialBasis in = monomial_basis(d, D);
  const MonomialBasis out = monomial_basis(d, out_degree);
  const auto rows = static_cast<Eigen::Index>(out.list.size());
  MatrixX m(rows * static_cast<Eigen::Index>(phi.size()), static_cast<Eigen::Index>(in.list.size()));
  for (std::size_t n = 0; n < phi.size(); ++n)
    m.middleRows(static_cast<Eigen::Index>(n) * rows, rows) = mult_block(phi[n], in, out);
  return m;
}

}  // namespace

MatrixX mult_matrix(const SymVector& phi, int D, int out_degree) {
  if (D < 0) fail_input("negative_degree", "truncation degree must be non-negative");
  if (out_degree < 0) out_degree = D + std::max(0, phi.max_total());
  return mult_block(phi, monomial_basis(phi.d(), D), monomial_basis(phi.d(), out_degree));
}

double column_norm(const MultTuple& phi, int D) {
  return largest_singular_value(stacked(phi, D, D + tuple_degree(phi)));
}

double compressed_column_norm(const MultTuple& phi, int D) {
  return largest_singular_value(stacked(phi, D, D));
}

double row_norm(const MultTuple& phi, int D) {
  const int d = tuple_dim(phi);
  const MonomialBasis in = monomial_basis(d, D);
  const MonomialBasis out = monomial_basis(d, D + tuple_degree(phi));
  const auto cols = static_cast<Eigen::Index>(in.list.size());
  MatrixX m(static_cast<Eigen::Index>(out.list.size()), cols * static_cast<Eigen::Index>(phi.size()));
  for (std::size_t n = 0; n < phi.size(); ++n)
    m.middleCols(static_cast<Eigen::Index>(n) * cols, cols) = mult_block(phi[n], in, out);
  return largest_singular_value(m);
}

ColRowReport column_row_ratio(const MultTuple& phi, int D) {
  ColRowReport r;
  r.D = D;
  r.column_norm = column_norm(phi, D);
  r.row_norm = row_norm(phi, D);
  if (!(r.column_norm > 0.0)) fail_input("zero_column", "column-row ratio of the zero tuple is undefined");
  r.ratio = r.row_norm / r.column_norm;
  return r;
}

MatrixX szego_gram(const MatrixX& points) {
  const Eigen::Index m = points.rows();
  for (Eigen::Index i = 0; i < m; ++i) {
    if (points.row(i).squaredNorm() >= 1.0)
      fail_input("point_outside_ball", "points must lie in the open unit ball");
    if (1.0 - points.row(i).squaredNorm() < 1e-12)
      throw Error(ErrorKind::Tolerance, "kernel_ill_conditioned", "point too close to the boundary sphere");
    for (Eigen::Index j = 0; j < i; ++j)
      if ((points.row(i) - points.row(j)).norm() < 1e-6)
        fail_input("coincident_points", "points closer than 1e-6 are not allowed");
  }
  MatrixX g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      g(i, j) = 1.0 / (1.0 - points.row(j).dot(points.row(i)));
  return g;
}

PickResult column_pick_test_values(const MatrixX& values, const MatrixX& points, double bound) {
  if (!(bound > 0.0)) fail_input("bad_bound", "bound must be positive");
  const MatrixX k = szego_gram(points);
  if (values.cols() != k.rows()) fail_input("dimension_mismatch", "one value per point is required");
  const MatrixX inner = values.adjoint() * values;  // (i, j) = sum_n conj(phi_n(x_i)) phi_n(x_j)
  MatrixX pick(k.rows(), k.cols());
  for (Eigen::Index i = 0; i < k.rows(); ++i)
    for (Eigen::Index j = 0; j < k.cols(); ++j)
      pick(i, j) = (bound * bound - std::conj(inner(i, j))) * k(i, j);
  Eigen::SelfAdjointEigenSolver<MatrixX> eig(pick, Eigen::EigenvaluesOnly);
  PickResult r;
  r.min_eigenvalue = eig.eigenvalues()(0);
  r.positive = r.min_eigenvalue >= -1e-12 * std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  return r;
}

PickResult column_pick_test(const MultTuple& phi, const MatrixX& points, double bound) {
  tuple_dim(phi);
  MatrixX values(static_cast<Eigen::Index>(phi.size()), points.rows());
  for (std::size_t n = 0; n < phi.size(); ++n)
    for (Eigen::Index i = 0; i < points.rows(); ++i)
      values(static_cast<Eigen::Index>(n), i) = point_eval(phi[n], points.row(i).transpose());
  return column_pick_test_values(values, points, bound);
}

PickResult pick_test(const SymVector& phi, const MatrixX& points, double bound) {
  return column_pick_test({phi}, points, bound);
}

}  // namespace cnpfact
