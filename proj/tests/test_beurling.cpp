// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "cnpfact/beurling.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace cnpfact;
using testing::mono;

namespace {

FreeVector line(std::vector<Scalar> coeffs, int degree) {
  FreeVector v(1, degree);
  for (std::size_t k = 0; k < coeffs.size(); ++k) v.set(Word(std::vector<int>(k, 1), 1), coeffs[k]);
  return v;
}

// (z, 1) in one variable at the given degree cap.
ColumnTuple z_one(int degree) { return ColumnTuple{{line({0, 1}, degree), line({1}, degree)}}; }

SymVector poly1(std::vector<Scalar> c) {
  SymVector h(1, static_cast<int>(c.size()) - 1);
  for (std::size_t k = 0; k < c.size(); ++k) h.set(MultiIndex({static_cast<int>(k)}), c[k]);
  return h;
}

SymVector from_roots(std::vector<Scalar> roots) {
  std::vector<Scalar> p{1.0};
  for (Scalar r : roots) {
    std::vector<Scalar> next(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k] -= r * p[k];
      next[k + 1] += p[k];
    }
    p = next;
  }
  return poly1(p);
}

}  // namespace

TEST_CASE("invariant subspace dimensions") {
  SubspaceBasis b = generate_invariant_subspace(z_one(1), 2);
  CHECK(b.vectors.size() == 3);
  CHECK(b.ambient == 3);
  // The span is that of (z,1), (z^2,z), (z^3,z^2).
  for (int k = 0; k < 3; ++k) {
    ColumnTuple g{{line({}, 3), line({}, 3)}};
    g.entries[0].set(Word(std::vector<int>(static_cast<std::size_t>(k + 1), 1), 1), 1.0);
    g.entries[1].set(Word(std::vector<int>(static_cast<std::size_t>(k), 1), 1), 1.0);
    VectorX v = g.to_dense();
    for (const ColumnTuple& q : b.vectors) v -= q.to_dense() * q.to_dense().dot(v);
    CHECK(v.norm() < 1e-14);
  }
  b = generate_invariant_subspace(ColumnTuple{{FreeVector::basis(2, 0, Word(2))}}, 2);
  CHECK(b.vectors.size() == 7);
  for (std::size_t i = 0; i < b.vectors.size(); ++i)
    for (std::size_t j = 0; j < b.vectors.size(); ++j) {
      const Scalar ip = b.vectors[i].to_dense().dot(b.vectors[j].to_dense());
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  CHECK_THROWS_AS(generate_invariant_subspace(ColumnTuple{{FreeVector(2, 2)}}, 2), Error);
}

TEST_CASE("wandering vectors of hand examples") {
  const ColumnTuple ft = z_one(1);
  Wandering w = wandering_subspace(generate_invariant_subspace(ft, 2), ft);
  CHECK(w.gap == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(std::abs(w.w.entries[0].coeff(Word({1}, 1)) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(w.w.entries[1].coeff(Word(1)) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(w.w.squared_norm() - 1.0) < 1e-14);

  const ColumnTuple z2{{line({0, 0, 1}, 2)}};
  w = wandering_subspace(generate_invariant_subspace(z2, 2), z2);
  CHECK(w.gap == doctest::Approx(1.0));
  CHECK(std::abs(w.w.entries[0].coeff(Word({1, 1}, 1)) - 1.0) < 1e-14);

  const ColumnTuple vac{{FreeVector::basis(2, 0, Word(2))}};
  w = wandering_subspace(generate_invariant_subspace(vac, 2), vac);
  CHECK(std::abs(w.w.entries[0].coeff(Word(2)) - 1.0) < 1e-14);
  CHECK(w.w.squared_norm() == doctest::Approx(1.0));
}

TEST_CASE("wandering gap obeys Pythagoras") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    ColumnTuple ft;
    for (int n = 0; n < 2; ++n) ft.entries.push_back(lift_min_norm(testing::random_poly(rng, 2, 2)));
    const Wandering w = wandering_subspace(generate_invariant_subspace(ft, 2), ft);
    CHECK(std::abs(w.pythagoras_defect) < 1e-10 * ft.squared_norm());
  }
}

TEST_CASE("column multiplier read-off") {
  const auto phi = extract_column_multiplier(ColumnTuple{{FreeVector::basis(2, 0, Word(2))}});
  CHECK(phi[0].coeff(Word(2)) == Scalar(1));
  CHECK(phi[0].terms().size() == 1);
  ColumnTuple w = z_one(1);
  for (FreeVector& v : w.entries) v *= 1.0 / std::sqrt(2.0);
  const auto p2 = extract_column_multiplier(w);
  CHECK(p2[0].coeff(Word({1}, 1)) == Scalar(1.0 / std::sqrt(2.0)));
  CHECK(p2[1].coeff(Word(1)) == Scalar(1.0 / std::sqrt(2.0)));
  CHECK(p2[0].side() == Side::Left);
  const auto p3 = extract_column_multiplier(ColumnTuple{{FreeVector::basis(2, 2, Word({1, 2}, 2))}});
  CHECK(p3[0].coeff(Word({1, 2}, 2)) == Scalar(1));
  CHECK_THROWS_AS(extract_column_multiplier(ColumnTuple{{FreeVector(2, 1)}}), Error);
}

TEST_CASE("cyclic factor by least squares") {
  ColumnTuple w = z_one(3);
  for (FreeVector& v : w.entries) v *= 1.0 / std::sqrt(2.0);
  CyclicSolve s = solve_cyclic_factor(extract_column_multiplier(w), z_one(3));
  CHECK(std::abs(s.F.coeff(Word(1)) - std::sqrt(2.0)) < 1e-13);
  CHECK(s.F.squared_norm() == doctest::Approx(2.0));
  CHECK(s.residual < 1e-14);

  const ColumnTuple z2{{line({0, 0, 1}, 4)}};
  s = solve_cyclic_factor(extract_column_multiplier(z2), z2);
  CHECK(std::abs(s.F.coeff(Word(1)) - 1.0) < 1e-14);
  CHECK(s.F.squared_norm() == doctest::Approx(1.0));

  const ColumnTuple vac{{FreeVector::basis(2, 2, Word(2))}};
  s = solve_cyclic_factor(extract_column_multiplier(vac), vac);
  CHECK(std::abs(s.F.coeff(Word(2)) - 1.0) < 1e-14);
  CHECK(s.F.squared_norm() == doctest::Approx(1.0));
}

TEST_CASE("factor_sequence on hand examples, exact and literal") {
  for (bool refine : {true, false}) {
    FactorOptions opt;
    opt.refine = refine;
    FactorizationT1 f = factor_sequence({mono({1}, 1), SymVector::constant(1, 1, 1.0)}, 2, opt);
    CHECK(std::abs(f.phi[0].coeff(MultiIndex({1})) - 1.0 / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(f.phi[1].coeff(MultiIndex({0})) - 1.0 / std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(f.F.coeff(MultiIndex({0})) - std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(f.diagnostics.column_norm - 1.0) < 1e-10);
    CHECK(std::abs(f.diagnostics.F_norm_sq - 2.0) < 1e-10);

    f = factor_sequence({SymVector::constant(2, 0, 1.0)}, 2, opt);
    CHECK(std::abs(f.phi[0].coeff(MultiIndex::zero(2)) - 1.0) < 1e-12);
    CHECK(std::abs(f.F.coeff(MultiIndex::zero(2)) - 1.0) < 1e-12);

    f = factor_sequence({mono({2}, 2)}, 2, opt);
    CHECK(std::abs(f.phi[0].coeff(MultiIndex({2})) - 1.0) < 1e-10);
    CHECK(std::abs(f.F.coeff(MultiIndex({0})) - 1.0) < 1e-10);
    CHECK(f.diagnostics.F_norm_sq == doctest::Approx(1.0));
  }
}

TEST_CASE("cyclicity check") {
  CHECK(check_cyclic(SymVector::constant(1, 0, std::sqrt(2.0)), 4) < 1e-14);
  CHECK(check_cyclic(mono({1}, 1), 4) == doctest::Approx(1.0));
  const SymVector f = SymVector::constant(1, 1, 1.0) + mono({1}, 1, 0.5);
  CHECK(check_cyclic(f, 8) <= std::pow(0.5, 9));
  for (int dc = 1; dc <= 10; ++dc) CHECK(check_cyclic(f, dc) < check_cyclic(f, dc - 1));
}

TEST_CASE("exact factorization properties on random sequences") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 1 + trial % 2;
    const int k = 1 + trial % 3;
    std::vector<SymVector> fs;
    for (int n = 0; n <= trial % 4; ++n) fs.push_back(testing::random_poly(rng, d, k));
    const FactorizationT1 f = factor_sequence(fs, k + 2);
    const FactorDiagnostics& g = f.diagnostics;
    CHECK(g.max_residual <= 1e-8);
    CHECK(g.column_norm <= 1.0 + 1e-8);
    CHECK(g.F_norm_sq <= g.input_norm_sq * (1.0 + 1e-8));
    CHECK(g.wandering_gap <= g.truncated_gap * (1 + 1e-12));

    // phi_n F reproduces f_n through the ambient degree, not only the input degree.
    for (std::size_t n = 0; n < fs.size(); ++n) {
      const SymVector r = mult_sym(f.phi[n], f.F, g.ambient) - fs[n].with_degree(g.ambient);
      CHECK(da_norm(r) < 1e-9 * std::sqrt(g.input_norm_sq));
    }
  }
}

TEST_CASE("shifts of the wandering vector are orthonormal") {
  std::mt19937_64 rng(29);
  const std::vector<SymVector> fs{testing::random_poly(rng, 2, 2), testing::random_poly(rng, 2, 2)};
  FactorOptions opt;
  opt.ambient = 14;
  const FactorizationT1 f = factor_sequence(fs, 3, opt);
  // Tail norms of the unit vector w past each length, from the exact low-order coefficients.
  std::vector<double> head(15, 0.0);
  for (const FreeVector& v : f.w.entries)
    for (const auto& [word, c] : v.terms())
      for (std::size_t m = word.length(); m < head.size(); ++m) head[m] += std::norm(c);
  auto tail = [&](std::size_t m) { return std::sqrt(std::max(0.0, 1.0 - head[m])); };
  CHECK(tail(0) < 1.0);
  CHECK(head[14] <= 1.0 + 1e-12);

  // Truncating at K perturbs the Gram entry by the inner product of the two tails.
  const std::vector<Word> shifts = enumerate_words(2, 3);
  std::vector<VectorX> images;
  for (const Word& b : shifts) {
    ColumnTuple moved;
    for (const FreeVector& v : f.w.entries) moved.entries.push_back(create_word(b, v, Side::Right).vector.with_degree(14));
    images.push_back(moved.to_dense());
  }
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = 0; j < images.size(); ++j) {
      const double bound = tail(14 - shifts[i].length()) * tail(14 - shifts[j].length());
      CHECK(std::abs(images[i].dot(images[j]) - (i == j ? 1.0 : 0.0)) <= bound + 1e-10);
    }
}

TEST_CASE("literal residual does not grow with Dm") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 1 + trial % 2;
    std::vector<SymVector> fs{testing::random_poly(rng, d, 2), testing::random_poly(rng, d, 2)};
    FactorOptions opt;
    opt.refine = false;
    double prev = INFINITY;
    for (int dm = 1; dm <= (d == 1 ? 8 : 4); ++dm) {
      const double r = factor_sequence(fs, dm, opt).diagnostics.max_residual;
      CHECK(r <= prev + 1e-12);
      prev = r;
    }
  }
}

TEST_CASE("literal factor converges to the exact one") {
  const SymVector p = from_roots({0.5, Scalar(0, -0.3), 2.0});
  const FactorizationT1 ex = factor_sequence({p}, 2);
  double prev = INFINITY;
  for (int dm : {4, 8, 16}) {
    FactorOptions opt;
    opt.refine = false;
    const double dist = testing::coeff_distance(factor_sequence({p}, dm, opt).F, ex.F.with_degree(3 + dm));
    CHECK(dist < prev);
    prev = dist;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("scaling the input scales F and fixes phi") {
  std::mt19937_64 rng(37);
  std::vector<SymVector> fs{testing::random_poly(rng, 2, 2), testing::random_poly(rng, 2, 1)};
  const FactorizationT1 a = factor_sequence(fs, 3);
  for (SymVector& f : fs) f *= 3.5;
  const FactorizationT1 b = factor_sequence(fs, 3);
  CHECK(testing::coeff_distance(b.F, a.F * Scalar(3.5)) < 1e-10);
  for (std::size_t n = 0; n < fs.size(); ++n) CHECK(testing::coeff_distance(a.phi[n], b.phi[n]) < 1e-10);
}

TEST_CASE("one variable, one function: classical inner-outer factorization") {
  FactorOptions opt;
  opt.ambient = 60;
  const std::vector<std::vector<Scalar>> cases{
      {0.5, Scalar(0, -0.3)}, {Scalar(0.2, 0.6), -0.7, 0.1}, {2.0, Scalar(0, -1.5)}, {Scalar(1.3, 1.0), -1.8, 0.4}};
  for (const auto& roots : cases) {
    const SymVector p = from_roots(roots);
    std::vector<Scalar> pc;
    for (int k = 0; k <= static_cast<int>(roots.size()); ++k) pc.push_back(p.coeff(MultiIndex({k})));
    const std::vector<Scalar> outer = oracle::hardy_outer(pc);
    const FactorizationT1 f = factor_sequence({p}, 2, opt);
    const Scalar phase = f.F.coeff(MultiIndex({0})) / outer[0];
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
    for (std::size_t k = 0; k < outer.size(); ++k)
      CHECK(std::abs(f.F.coeff(MultiIndex({static_cast<int>(k)})) - phase * outer[k]) < 1e-10);
    CHECK(f.F.max_total() <= static_cast<int>(roots.size()));
    // phi is inner: multiplication by it keeps the norm of z^k.
    for (int k = 0; k <= 5; ++k) CHECK(std::abs(da_norm(mult_sym(f.phi[0], mono({k}, k), 60)) - 1.0) < 1e-8);
    double prev = 1.0;
    for (int dc : {4, 8, 16, 32}) {
      const double r = check_cyclic(f.F, dc);
      CHECK(r <= prev);
      prev = r;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("invalid pipeline arguments") {
  CHECK_THROWS_AS(factor_sequence({}, 2), Error);
  CHECK_THROWS_AS(factor_sequence({mono({1}, 1)}, 0), Error);
  CHECK_THROWS_AS(factor_sequence({SymVector(2, 2)}, 2), Error);
  FactorOptions opt;
  opt.cap = 10;
  try {
    factor_sequence({testing::mono({2, 1}, 3)}, 3, opt);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceCap);
  }
}
