// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/beurling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "cnpfact/mult.hpp"
#include "cnpfact/realization.hpp"

namespace cnpfact {
namespace {

void check_column(const ColumnTuple& t) {
  if (t.entries.empty()) fail_input("empty_column", "column must have at least one entry");
  for (const FreeVector& v : t.entries)
    if (v.d() != t.d() || v.degree() != t.degree())
      fail_input("dimension_mismatch", "column entries must share alphabet and degree");
}

void check_basis_cap(int d, int degree, std::size_t cap) {
  if (basis_size(d, degree) > cap)
    throw Error(ErrorKind::ResourceCap, "basis_cap_exceeded",
                "Fock basis for d=" + std::to_string(d) + ", degree " + std::to_string(degree) +
                    " exceeds the cap of " + std::to_string(cap));
}

// Gram-Schmidt with one reorthogonalization pass; keeps columns whose
// residual exceeds `threshold`.
MatrixX orthonormalize(const MatrixX& gens, double threshold) {
  MatrixX q(gens.rows(), 0);
  for (Eigen::Index c = 0; c < gens.cols(); ++c) {
    VectorX v = gens.col(c);
    for (int pass = 0; pass < 2; ++pass) v -= q * (q.adjoint() * v);
    const double len = v.norm();
    if (len <= threshold) continue;
    q.conservativeResize(Eigen::NoChange, q.cols() + 1);
    q.col(q.cols() - 1) = v / len;
  }
  return q;
}

double largest_singular_value(const MatrixX& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::BDCSVD<MatrixX>(m).singularValues()(0);
}

MatrixX shifted_generators(const ColumnTuple& ft, int min_length, int max_length) {
  const std::vector<Word> words = enumerate_words(ft.d(), max_length);
  const std::size_t first = min_length == 0 ? 0 : basis_size(ft.d(), min_length - 1);
  MatrixX gens(static_cast<Eigen::Index>(basis_size(ft.d(), ft.degree()) * ft.entries.size()),
               static_cast<Eigen::Index>(words.size() - first));
  for (std::size_t k = first; k < words.size(); ++k)
    gens.col(static_cast<Eigen::Index>(k - first)) = shift_right(ft, words[k]).to_dense();
  return gens;
}

// Rotates w by a unit scalar so its first significant coefficient, in word
// order and then entry order, is real positive. Returns the unit scalar used.
Scalar fix_phase(ColumnTuple& w) {
  double largest = 0.0;
  for (const FreeVector& v : w.entries)
    for (const auto& [word, c] : v.terms()) largest = std::max(largest, std::abs(c));
  if (largest == 0.0) return 1.0;
  const double threshold = 1e-12 * largest;
  const Word* best = nullptr;
  Scalar lead = 0;
  for (const FreeVector& v : w.entries)
    for (const auto& [word, c] : v.terms())
      if (std::abs(c) > threshold) {
        if (best == nullptr || word < *best) {
          best = &word;
          lead = c;
        }
        break;
      }
  const Scalar unit = std::abs(lead) / lead;
  for (FreeVector& v : w.entries) v *= unit;
  return unit;
}

}  // namespace

int ColumnTuple::max_length() const {
  int m = -1;
  for (const FreeVector& v : entries) m = std::max(m, v.max_length());
  return m;
}

double ColumnTuple::squared_norm() const {
  double s = 0;
  for (const FreeVector& v : entries) s += v.squared_norm();
  return s;
}

ColumnTuple ColumnTuple::with_degree(int degree) const {
  ColumnTuple out;
  for (const FreeVector& v : entries) out.entries.push_back(v.with_degree(degree));
  return out;
}

VectorX ColumnTuple::to_dense() const {
  const auto block = static_cast<Eigen::Index>(basis_size(d(), degree()));
  VectorX out(block * static_cast<Eigen::Index>(entries.size()));
  for (std::size_t n = 0; n < entries.size(); ++n)
    out.segment(static_cast<Eigen::Index>(n) * block, block) = entries[n].to_dense();
  return out;
}

ColumnTuple ColumnTuple::from_dense(int d, int degree, std::size_t count, const VectorX& v) {
  const auto block = static_cast<Eigen::Index>(basis_size(d, degree));
  if (v.size() != block * static_cast<Eigen::Index>(count))
    fail_input("dimension_mismatch", "dense column has the wrong length");
  ColumnTuple out;
  for (std::size_t n = 0; n < count; ++n)
    out.entries.push_back(FreeVector::from_dense(d, degree, v.segment(static_cast<Eigen::Index>(n) * block, block)));
  return out;
}

ColumnTuple shift_right(const ColumnTuple& t, const Word& a) {
  ColumnTuple out;
  for (const FreeVector& v : t.entries) out.entries.push_back(create_word(a, v, Side::Right).vector);
  return out;
}

SubspaceBasis generate_invariant_subspace(const ColumnTuple& Ft, int Dm, int ambient, double rank_tol) {
  check_column(Ft);
  if (Dm < 1) fail_input("bad_depth", "generator depth must be at least 1");
  const int len = Ft.max_length();
  if (len < 0) fail_input("zero_input", "the zero column generates no subspace");
  if (ambient < 0) ambient = len + Dm;
  if (ambient < len + Dm) fail_input("ambient_too_small", "ambient degree must cover the input degree plus Dm");
  check_basis_cap(Ft.d(), ambient, kDefaultBasisCap);

  const ColumnTuple ft = Ft.with_degree(ambient);
  const MatrixX gens = shifted_generators(ft, 0, Dm);
  const MatrixX q = orthonormalize(gens, rank_tol * largest_singular_value(gens));

  SubspaceBasis basis;
  basis.generator_depth = Dm;
  basis.ambient = ambient;
  basis.rank_tol = rank_tol;
  for (Eigen::Index c = 0; c < q.cols(); ++c)
    basis.vectors.push_back(ColumnTuple::from_dense(ft.d(), ambient, ft.entries.size(), q.col(c)));
  return basis;
}

Wandering wandering_subspace(const SubspaceBasis& basis, const ColumnTuple& Ft, double tol) {
  check_column(Ft);
  if (basis.vectors.empty()) fail_input("empty_subspace", "invariant subspace basis is empty");
  const ColumnTuple ft = Ft.with_degree(basis.ambient);
  const VectorX f = ft.to_dense();
  const MatrixX gens = shifted_generators(ft, 1, basis.generator_depth);
  const MatrixX q = orthonormalize(gens, basis.rank_tol * largest_singular_value(gens));

  const VectorX coords = q.adjoint() * f;
  const VectorX r = f - q * coords;
  Wandering out;
  out.gap = r.norm();
  out.pythagoras_defect = f.squaredNorm() - out.gap * out.gap - coords.squaredNorm();
  if (out.gap <= tol * f.norm())
    throw Error(ErrorKind::Tolerance, "wandering_gap_below_tolerance",
                "no wandering vector at this truncation; increase Dm or the ambient degree");
  out.w = ColumnTuple::from_dense(ft.d(), basis.ambient, ft.entries.size(), r / out.gap);
  fix_phase(out.w);
  return out;
}

std::vector<FreePoly> extract_column_multiplier(const ColumnTuple& w) {
  check_column(w);
  if (w.max_length() < 0) fail_input("zero_input", "zero vector defines no multiplier");
  std::vector<FreePoly> phi;
  for (const FreeVector& v : w.entries) {
    FreePoly p(v.d(), Side::Left);
    for (const auto& [word, c] : v.terms()) p.add(word, c);
    phi.push_back(std::move(p));
  }
  return phi;
}

CyclicSolve solve_cyclic_factor(const std::vector<FreePoly>& phi, const ColumnTuple& Ft, int interior,
                                double condition_cap) {
  check_column(Ft);
  if (phi.size() != Ft.entries.size()) fail_input("dimension_mismatch", "multiplier and column lengths differ");
  const int d = Ft.d();
  const int ambient = Ft.degree();
  int ord = -1;
  for (const FreePoly& p : phi)
    for (const auto& [word, c] : p.terms())
      if (c != Scalar(0) && (ord < 0 || static_cast<int>(word.length()) < ord)) ord = static_cast<int>(word.length());
  if (ord < 0) fail_input("zero_input", "zero multiplier");
  if (ord > ambient) fail_input("ambient_too_small", "multiplier order exceeds the ambient degree");
  if (interior < 0) interior = std::max(0, Ft.max_length());

  const int unknown_degree = ambient - ord;
  const auto block = static_cast<Eigen::Index>(basis_size(d, ambient));
  const auto cols = static_cast<Eigen::Index>(basis_size(d, unknown_degree));
  MatrixX a = MatrixX::Zero(block * static_cast<Eigen::Index>(phi.size()), cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const Word beta = word_at(static_cast<std::size_t>(c), d);
    for (std::size_t n = 0; n < phi.size(); ++n)
      for (const auto& [x, coef] : phi[n].terms()) {
        if (static_cast<int>(x.length() + beta.length()) > ambient) continue;
        a(static_cast<Eigen::Index>(n) * block + static_cast<Eigen::Index>(graded_index(concat(x, beta))), c) += coef;
      }
  }

  Eigen::BDCSVD<MatrixX> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  CyclicSolve out;
  out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(out.condition <= condition_cap))
    throw Error(ErrorKind::Tolerance, "ill_conditioned",
                "cyclic factor system is ill-conditioned; increase the truncation");
  const VectorX x = svd.solve(Ft.to_dense());
  out.F = FreeVector::from_dense(d, unknown_degree, x).with_degree(ambient);

  const ColumnTuple diff = ColumnTuple::from_dense(d, ambient, phi.size(), a * x - Ft.to_dense());
  out.residual = std::sqrt(diff.with_degree(interior).squared_norm());
  return out;
}

FactorizationT1 factor_sequence(const std::vector<SymVector>& fs, int Dm, const FactorOptions& options) {
  if (fs.empty()) fail_input("empty_sequence", "at least one function is required");
  if (Dm < 1) fail_input("bad_depth", "Dm must be at least 1");
  const int d = fs.front().d();
  int k = -1;
  double input_norm_sq = 0.0;
  for (const SymVector& f : fs) {
    if (f.d() != d) fail_input("dimension_mismatch", "functions use different numbers of variables");
    k = std::max(k, f.max_total());
    input_norm_sq += std::pow(da_norm(f), 2);
  }
  if (k < 0) fail_input("zero_input", "cannot factor the zero sequence");
  const int ambient = options.ambient < 0 ? k + Dm : options.ambient;
  if (ambient < k) fail_input("ambient_too_small", "ambient degree is below the input degree");
  check_basis_cap(d, ambient, options.cap);

  ColumnTuple ft;
  for (const SymVector& f : fs) ft.entries.push_back(lift_min_norm(f.with_degree(k), options.cap));

  FactorizationT1 out;
  FactorDiagnostics& diag = out.diagnostics;
  diag.input_norm_sq = input_norm_sq;
  diag.input_degree = k;
  diag.ambient = ambient;
  diag.dm = Dm;
  diag.refined = options.refine;

  const FreeRealization real = realize_polynomial_column(ft.entries);
  OuterFactorOptions oopt;
  oopt.min_depth = Dm;
  oopt.polish = options.refine;
  const OuterFactor outer = solve_outer_factor(real, oopt);
  diag.truncated_gap = outer.truncated_gaps[std::min<std::size_t>(static_cast<std::size_t>(Dm),
                                                                   outer.truncated_gaps.size() - 1)];
  const ColumnTuple ft_amb = ft.with_degree(ambient);

  if (options.refine) {
    diag.moment_residual = outer.moment_residual;
    diag.wandering_gap = outer.gap;
    if (outer.gap <= options.tol * std::sqrt(input_norm_sq))
      throw Error(ErrorKind::Tolerance, "wandering_gap_below_tolerance",
                  "wandering component of the input is numerically zero");
    out.free_F = outer_polynomial(real, outer).with_degree(ambient);
    for (const FreeVector& v : ft_amb.entries)
      out.w.entries.push_back(right_divide(v, out.free_F, ambient, options.cap));
  } else {
    if (ambient < k + Dm) fail_input("ambient_too_small", "ambient degree must cover the input degree plus Dm");
    const SubspaceBasis basis = generate_invariant_subspace(ft, Dm, ambient, options.rank_tol);
    Wandering wand = wandering_subspace(basis, ft, options.tol);
    diag.wandering_gap = wand.gap;
    out.w = std::move(wand.w);
    out.free_F = solve_cyclic_factor(extract_column_multiplier(out.w), ft_amb, k).F;
  }

  const Scalar unit = fix_phase(out.w);
  out.free_F *= std::conj(unit);

  for (const FreeVector& v : out.w.entries) out.phi.push_back(evaluate_fock(v));
  out.F = evaluate_fock(out.free_F);

  diag.column_norm = compressed_column_norm(out.phi, ambient);
  diag.F_norm_sq = std::pow(da_norm(out.F), 2);
  for (std::size_t n = 0; n < fs.size(); ++n) {
    const SymVector r = mult_sym(out.phi[n], out.F, k) - fs[n].with_degree(k);
    diag.max_residual = std::max(diag.max_residual, da_norm(truncate_degree(r, k)));
  }
  diag.cyclic_residual = check_cyclic(out.F, options.cyclic_depth);
  return out;
}

double check_cyclic(const SymVector& F, int Dc) {
  if (Dc < 0) fail_input("negative_degree", "cyclicity depth must be non-negative");
  if (F.is_zero()) return 1.0;
  const int d = F.d();
  const int top = Dc + F.max_total();
  const std::vector<MultiIndex> rows = enumerate_multi_indices(d, top);
  const std::vector<MultiIndex> cols = enumerate_multi_indices(d, Dc);
  std::map<MultiIndex, Eigen::Index> index;
  for (std::size_t r = 0; r < rows.size(); ++r) index.emplace(rows[r], static_cast<Eigen::Index>(r));

  MatrixX a = MatrixX::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [n, coef] : F.terms()) {
      const MultiIndex m = cols[c] + n;
      a(index.at(m), static_cast<Eigen::Index>(c)) += coef * std::sqrt(monomial_norm_sq(m));
    }
  VectorX one = VectorX::Zero(a.rows());
  one(0) = 1.0;
  const VectorX x = a.colPivHouseholderQr().solve(one);
  return (a * x - one).norm();
}

}  // namespace cnpfact
