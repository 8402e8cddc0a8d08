// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "cnpfact/mult.hpp"
#include "helpers.hpp"

using namespace cnpfact;
using testing::mono;

namespace {

MultTuple random_tuple(std::mt19937_64& rng, int d, int max_entries, int max_degree) {
  const int entries = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_entries));
  MultTuple phi;
  for (int n = 0; n < entries; ++n) phi.push_back(testing::random_poly(rng, d, static_cast<int>(rng() % static_cast<unsigned>(max_degree + 1))));
  return phi;
}

MatrixX random_points(std::mt19937_64& rng, int d, int count, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MatrixX pts(count, d);
  for (int i = 0; i < count; ++i) {
    VectorX x(d);
    for (int k = 0; k < d; ++k) x(k) = Scalar(u(rng), u(rng));
    pts.row(i) = (x * (radius * std::sqrt(u(rng) * 0.5 + 0.5) / x.norm())).transpose();
  }
  return pts;
}

// Sum of coefficient moduli bounds the supremum over the closed disc.
double l1(const SymVector& p) {
  double s = 0.0;
  for (const auto& [n, c] : p.terms()) s += std::abs(c);
  return s;
}

}  // namespace

TEST_CASE("multiplication matrices") {
  CHECK((mult_matrix(SymVector::constant(2, 0, 1.0), 3) - MatrixX::Identity(10, 10)).norm() == 0.0);

  const MatrixX s = mult_matrix(mono({1}, 1), 4);
  CHECK(s.rows() == 6);
  CHECK(s.cols() == 5);
  MatrixX shift = MatrixX::Zero(6, 5);
  for (int k = 0; k < 5; ++k) shift(k + 1, k) = 1.0;
  CHECK((s - shift).norm() < 1e-15);

  const MatrixX m = mult_matrix(mono({1, 0}, 1), 1);
  const std::vector<MultiIndex> in = enumerate_multi_indices(2, 1);
  const std::vector<MultiIndex> out = enumerate_multi_indices(2, 2);
  auto pos = [](const std::vector<MultiIndex>& v, const MultiIndex& n) {
    return static_cast<Eigen::Index>(std::find(v.begin(), v.end(), n) - v.begin());
  };
  CHECK(std::abs(m(pos(out, MultiIndex({1, 0})), pos(in, MultiIndex({0, 0}))) - 1.0) < 1e-15);
  CHECK(std::abs(m(pos(out, MultiIndex({1, 1})), pos(in, MultiIndex({0, 1}))) - std::sqrt(0.5)) < 1e-15);
}

TEST_CASE("column and row norms of hand examples") {
  CHECK(column_norm({SymVector::constant(1, 0, 1.0)}, 5) == doctest::Approx(1.0));
  CHECK(row_norm({SymVector::constant(1, 0, 1.0)}, 5) == doctest::Approx(1.0));

  const MultTuple zc{mono({1}, 1, 1.0 / std::sqrt(2.0)), SymVector::constant(1, 0, 1.0 / std::sqrt(2.0))};
  for (int D : {1, 4, 12}) {
    CHECK(std::abs(column_norm(zc, D) - 1.0) < 1e-12);
    CHECK(row_norm(zc, D) <= 1.0 + 1e-12);
  }
  CHECK(row_norm(zc, 40) > 0.99);

  const MultTuple zz{mono({1, 0}, 1), mono({0, 1}, 1)};
  for (int D : {1, 3, 6}) {
    const ColRowReport r = column_row_ratio(zz, D);
    CHECK(std::abs(r.column_norm - std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(r.row_norm - 1.0) < 1e-10);
    CHECK(std::abs(r.ratio - 1.0 / std::sqrt(2.0)) < 1e-10);
    CHECK(r.D == D);
  }

  std::mt19937_64 rng(41);
  const MultTuple single{testing::random_poly(rng, 2, 3)};
  CHECK(column_row_ratio(single, 5).ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(column_row_ratio({SymVector(2, 1)}, 3), Error);
}

TEST_CASE("truncated norms grow with D") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 1 + trial % 2;
    const MultTuple phi = random_tuple(rng, d, 3, 3);
    double c = 0.0, r = 0.0;
    for (int D = 0; D <= (d == 1 ? 10 : 5); ++D) {
      const double c2 = column_norm(phi, D), r2 = row_norm(phi, D);
      CHECK(c2 >= c * (1 - 1e-12));
      CHECK(r2 >= r * (1 - 1e-12));
      c = c2;
      r = r2;
    }
  }
}

TEST_CASE("one variable: row norm never exceeds column norm") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    const MultTuple phi = random_tuple(rng, 1, 5, 4);
    for (int D : {0, 3, 8}) CHECK(row_norm(phi, D) <= column_norm(phi, D) * (1 + 1e-8));
  }
}

TEST_CASE("products of interior blocks") {
  std::mt19937_64 rng(53);
  const SymVector phi = testing::random_poly(rng, 2, 2), psi = testing::random_poly(rng, 2, 3);
  const int D = 3;
  const MatrixX lhs = mult_matrix(phi, D + 3) * mult_matrix(psi, D);
  const MatrixX rhs = mult_matrix(mult_sym(phi, psi, 5), D);
  CHECK(lhs.rows() == rhs.rows());
  CHECK((lhs - rhs).norm() < 1e-12 * rhs.norm());
  // Compressions of products agree only on the part the compression cannot see.
  const MatrixX a = mult_matrix(phi, D, D), b = mult_matrix(psi, D, D), ab = mult_matrix(mult_sym(phi, psi, 5), D, D);
  CHECK((a * b - ab).norm() < 1e-12 * ab.norm());
}

TEST_CASE("sum of column products stays contractive in one variable") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    MultTuple phi = random_tuple(rng, 1, 4, 3);
    MultTuple psi;
    for (std::size_t i = 0; i < phi.size(); ++i) psi.push_back(testing::random_poly(rng, 1, static_cast<int>(rng() % 4)));
    auto normalize = [](MultTuple& t) {
      double s = 0.0;
      for (const auto& p : t) s += l1(p) * l1(p);
      for (auto& p : t) p *= 1.0 / std::sqrt(s);
    };
    normalize(phi);
    normalize(psi);
    SymVector m(1, 6);
    for (std::size_t i = 0; i < phi.size(); ++i) m = m + mult_sym(phi[i], psi[i], 6);
    CHECK(column_norm({m}, 12) <= 1.0 + 1e-8);
  }
}

TEST_CASE("Pick matrices") {
  std::mt19937_64 rng(61);
  const MatrixX pts = random_points(rng, 2, 6, 0.9);
  PickResult r = pick_test(SymVector(2, 0), pts, 1.0);
  CHECK(r.positive);
  CHECK(r.min_eigenvalue == doctest::Approx(szego_gram(pts).selfadjointView<Eigen::Lower>().eigenvalues().minCoeff()));

  const MatrixX disc = random_points(rng, 1, 6, 0.95);
  r = pick_test(mono({1}, 1), disc, 1.0);
  CHECK(r.positive);
  CHECK(r.min_eigenvalue > -1e-12);  // the matrix is all ones

  MatrixX two(2, 1);
  two << 0.0, 0.9;
  r = pick_test(mono({1}, 1, 2.0), two, 1.0);
  CHECK_FALSE(r.positive);
  // Entries: 1, 1, (1 - 4 * 0.81) / (1 - 0.81).
  const double c = (1.0 - 3.24) / 0.19;
  const double expected = 0.5 * ((1.0 + c) - std::sqrt((1.0 - c) * (1.0 - c) + 4.0));
  CHECK(r.min_eigenvalue == doctest::Approx(expected).epsilon(1e-12));

  const PickResult cr = column_pick_test({mono({1}, 1, 2.0)}, two, 1.0);
  CHECK(cr.min_eigenvalue == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("Pick test agrees with truncated column norms") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + trial % 2;
    const MultTuple phi = random_tuple(rng, d, 3, 2);
    const double bound = column_norm(phi, d == 1 ? 24 : 10) * 1.05;
    const MatrixX pts = random_points(rng, d, 8, 0.9);
    CHECK(column_pick_test(phi, pts, bound).positive);
    MatrixX values(static_cast<Eigen::Index>(phi.size()), pts.rows());
    for (std::size_t n = 0; n < phi.size(); ++n)
      for (Eigen::Index i = 0; i < pts.rows(); ++i) values(static_cast<Eigen::Index>(n), i) = point_eval(phi[n], pts.row(i).transpose());
    CHECK(column_pick_test_values(values, pts, bound).min_eigenvalue ==
          doctest::Approx(column_pick_test(phi, pts, bound).min_eigenvalue).epsilon(1e-10));
  }
}

TEST_CASE("Pick point validation") {
  MatrixX close(2, 1);
  close << 0.3, 0.3 + 1e-8;
  CHECK_THROWS_AS(szego_gram(close), Error);
  MatrixX outside(1, 2);
  outside << 0.9, 0.9;
  CHECK_THROWS_AS(szego_gram(outside), Error);
  MatrixX edge(1, 1);
  edge << 1.0 - 1e-14;
  CHECK_THROWS_AS(pick_test(mono({1}, 1), edge, 1.0), Error);
}
