// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/symfock.hpp"

#include <cmath>
#include <string>

namespace cnpfact {

SymVector::SymVector(int d, int degree) : d_(d), degree_(degree) {
  if (d < 1) fail_input("bad_alphabet", "number of variables must be positive");
  if (degree < 0) fail_input("negative_degree", "degree cap must be non-negative");
}

SymVector SymVector::constant(int d, int degree, Scalar c) {
  SymVector h(d, degree);
  h.set(MultiIndex::zero(d), c);
  return h;
}

SymVector SymVector::monomial(const MultiIndex& n, int degree, Scalar c) {
  SymVector h(n.dim(), degree);
  h.set(n, c);
  return h;
}

void SymVector::check_index(const MultiIndex& n) const {
  if (n.dim() != d_) fail_input("dimension_mismatch", "multi-index has the wrong number of variables");
  if (n.total() > degree_) fail_input("degree_exceeded", "monomial degree exceeds the degree cap");
}

Scalar SymVector::coeff(const MultiIndex& n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void SymVector::set(const MultiIndex& n, Scalar value) {
  check_index(n);
  if (value == Scalar(0))
    terms_.erase(n);
  else
    terms_[n] = value;
}

void SymVector::add(const MultiIndex& n, Scalar value) {
  check_index(n);
  if (value == Scalar(0)) return;
  auto [it, inserted] = terms_.try_emplace(n, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Scalar(0)) terms_.erase(it);
  }
}

int SymVector::max_total() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }

SymVector SymVector::with_degree(int degree) const {
  SymVector out(d_, degree);
  for (const auto& [n, c] : terms_)
    if (n.total() <= degree) out.terms_.emplace_hint(out.terms_.end(), n, c);
  return out;
}

SymVector& SymVector::operator+=(const SymVector& o) {
  if (o.d_ != d_) fail_input("dimension_mismatch", "polynomials in different numbers of variables");
  if (o.degree_ > degree_) degree_ = o.degree_;
  for (const auto& [n, c] : o.terms_) add(n, c);
  return *this;
}

SymVector& SymVector::operator-=(const SymVector& o) {
  if (o.d_ != d_) fail_input("dimension_mismatch", "polynomials in different numbers of variables");
  if (o.degree_ > degree_) degree_ = o.degree_;
  for (const auto& [n, c] : o.terms_) add(n, -c);
  return *this;
}

SymVector& SymVector::operator*=(Scalar s) {
  if (s == Scalar(0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [n, c] : terms_) c *= s;
  return *this;
}

double monomial_norm_sq(const MultiIndex& n) { return 1.0 / multinomial(n); }

double da_norm(const SymVector& h) {
  double s = 0;
  for (const auto& [n, c] : h.terms()) s += std::norm(c) * monomial_norm_sq(n);
  return std::sqrt(s);
}

Scalar da_inner(const SymVector& f, const SymVector& g) {
  if (f.d() != g.d()) fail_input("dimension_mismatch", "polynomials in different numbers of variables");
  Scalar s = 0;
  for (const auto& [n, c] : f.terms()) {
    Scalar other = g.coeff(n);
    if (other != Scalar(0)) s += c * std::conj(other) * monomial_norm_sq(n);
  }
  return s;
}

SymVector evaluate_fock(const FreeVector& v) {
  SymVector out(v.d(), v.degree());
  for (const auto& [w, c] : v.terms()) out.add(letter_count(w), c);
  return out;
}

FreeVector lift_min_norm(const SymVector& h, std::size_t cap) {
  if (basis_size(h.d(), h.max_total()) > cap)
    throw Error(ErrorKind::ResourceCap, "basis_cap_exceeded",
                "lift of a degree " + std::to_string(h.max_total()) + " polynomial in " +
                    std::to_string(h.d()) + " variables exceeds the Fock basis cap");
  FreeVector out(h.d(), h.degree());
  for (const auto& [n, c] : h.terms()) {
    const Scalar share = c / multinomial(n);
    for (const Word& w : words_with_count(n)) out.set(w, share);
  }
  return out;
}

SymVector mult_sym(const SymVector& f, const SymVector& g, int out_degree) {
  if (f.d() != g.d()) fail_input("dimension_mismatch", "polynomials in different numbers of variables");
  SymVector out(f.d(), out_degree);
  for (const auto& [n, a] : f.terms())
    for (const auto& [m, b] : g.terms())
      if (n.total() + m.total() <= out_degree) out.add(n + m, a * b);
  return out;
}

SymVector divide_sym(const SymVector& f, const SymVector& g, int out_degree) {
  if (f.d() != g.d()) fail_input("dimension_mismatch", "polynomials in different numbers of variables");
  const Scalar g0 = g.coeff(MultiIndex::zero(g.d()));
  if (std::abs(g0) == 0.0) fail_input("singular_divisor", "divisor must have a nonzero constant term");
  SymVector q(f.d(), out_degree);
  for (const MultiIndex& m : enumerate_multi_indices(f.d(), out_degree)) {
    Scalar acc = f.coeff(m);
    for (const auto& [n, c] : g.terms()) {
      if (n.total() == 0 || !m.dominates(n)) continue;
      acc -= q.coeff(m - n) * c;
    }
    q.set(m, acc / g0);
  }
  return q;
}

Scalar point_eval(const SymVector& h, const VectorX& z) {
  if (z.size() != h.d()) fail_input("dimension_mismatch", "point has the wrong number of coordinates");
  if (z.squaredNorm() >= 1.0) fail_input("point_outside_ball", "evaluation point must lie in the open unit ball");
  Scalar s = 0;
  for (const auto& [n, c] : h.terms()) {
    Scalar term = c;
    for (int k = 0; k < h.d(); ++k) term *= std::pow(z(k), n[static_cast<std::size_t>(k)]);
    s += term;
  }
  return s;
}

SymVector truncate_degree(const SymVector& h, int max_degree) {
  SymVector out(h.d(), h.degree());
  for (const auto& [n, c] : h.terms())
    if (n.total() <= max_degree) out.set(n, c);
  return out;
}

}  // namespace cnpfact
