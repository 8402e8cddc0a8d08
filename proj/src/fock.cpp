// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace cnpfact {

namespace {

void check_letter(int letter, int d) {
  if (letter < 1 || letter > d)
    fail_input("letter_out_of_range", "letter " + std::to_string(letter) + " outside 1.." + std::to_string(d));
}

void check_same_space(const FreeVector& a, const FreeVector& b) {
  if (a.d() != b.d() || a.degree() != b.degree())
    fail_input("dimension_mismatch", "Fock vectors live in different truncated spaces");
}

}  // namespace

// FreeVector -----------------------------------------------------------------

FreeVector::FreeVector(int d, int degree) : d_(d), degree_(degree) {
  if (d < 1) fail_input("bad_alphabet", "alphabet size must be positive");
  if (degree < 0) fail_input("negative_degree", "degree cap must be non-negative");
}

FreeVector FreeVector::basis(int d, int degree, const Word& w) {
  FreeVector v(d, degree);
  v.set(w, 1.0);
  return v;
}

void FreeVector::check_word(const Word& w) const {
  if (w.alphabet() != d_) fail_input("alphabet_mismatch", "word alphabet differs from vector alphabet");
  if (static_cast<int>(w.length()) > degree_)
    fail_input("degree_exceeded", "word longer than the degree cap");
}

Scalar FreeVector::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void FreeVector::set(const Word& w, Scalar value) {
  check_word(w);
  if (value == Scalar(0))
    terms_.erase(w);
  else
    terms_[w] = value;
}

void FreeVector::add(const Word& w, Scalar value) {
  check_word(w);
  if (value == Scalar(0)) return;
  auto [it, inserted] = terms_.try_emplace(w, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Scalar(0)) terms_.erase(it);
  }
}

int FreeVector::max_length() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.length());
}

int FreeVector::order() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.begin()->first.length());
}

double FreeVector::squared_norm() const {
  double s = 0;
  for (const auto& [w, c] : terms_) s += std::norm(c);
  return s;
}

double FreeVector::norm() const { return std::sqrt(squared_norm()); }

FreeVector FreeVector::with_degree(int degree) const {
  FreeVector out(d_, degree);
  for (const auto& [w, c] : terms_)
    if (static_cast<int>(w.length()) <= degree) out.terms_.emplace_hint(out.terms_.end(), w, c);
  return out;
}

Eigen::VectorXcd FreeVector::to_dense() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_size(d_, degree_)));
  for (const auto& [w, c] : terms_) v(static_cast<Eigen::Index>(graded_index(w))) = c;
  return v;
}

FreeVector FreeVector::from_dense(int d, int degree, const Eigen::VectorXcd& v) {
  FreeVector out(d, degree);
  if (static_cast<std::size_t>(v.size()) != basis_size(d, degree))
    fail_input("dimension_mismatch", "dense vector does not match the Fock basis size");
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != Scalar(0)) out.terms_.emplace_hint(out.terms_.end(), word_at(static_cast<std::size_t>(i), d), v(i));
  return out;
}

FreeVector& FreeVector::operator+=(const FreeVector& o) {
  check_same_space(*this, o);
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

FreeVector& FreeVector::operator-=(const FreeVector& o) {
  check_same_space(*this, o);
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

FreeVector& FreeVector::operator*=(Scalar s) {
  if (s == Scalar(0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

// FreePoly -------------------------------------------------------------------

FreePoly::FreePoly(int d, Side side) : d_(d), side_(side) {
  if (d < 1) fail_input("bad_alphabet", "alphabet size must be positive");
}

FreePoly FreePoly::identity(int d, Side side) {
  FreePoly p(d, side);
  p.add(Word(d), 1.0);
  return p;
}

FreePoly FreePoly::monomial(const Word& w, Side side, Scalar c) {
  FreePoly p(w.alphabet(), side);
  p.add(w, c);
  return p;
}

Scalar FreePoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void FreePoly::add(const Word& w, Scalar value) {
  if (w.alphabet() != d_) fail_input("alphabet_mismatch", "word alphabet differs from polynomial alphabet");
  if (value == Scalar(0)) return;
  auto [it, inserted] = terms_.try_emplace(w, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Scalar(0)) terms_.erase(it);
  }
}

int FreePoly::max_length() const {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.length());
}

FreePoly operator+(FreePoly a, const FreePoly& b) {
  if (a.d() != b.d() || a.side() != b.side()) fail_input("dimension_mismatch", "incompatible free polynomials");
  for (const auto& [w, c] : b.terms()) a.add(w, c);
  return a;
}

// Operators ------------------------------------------------------------------

Truncated create_word(const Word& w, const FreeVector& v, Side side) {
  if (w.alphabet() != v.d()) fail_input("alphabet_mismatch", "word alphabet differs from vector alphabet");
  Truncated out{FreeVector(v.d(), v.degree()), 0.0};
  for (const auto& [u, c] : v.terms()) {
    if (static_cast<int>(u.length() + w.length()) > v.degree()) {
      out.dropped_squared_norm += std::norm(c);
      continue;
    }
    out.vector.add(side == Side::Left ? concat(w, u) : concat(u, w), c);
  }
  return out;
}

Truncated create(int letter, const FreeVector& v, Side side) {
  check_letter(letter, v.d());
  return create_word(Word({letter}, v.d()), v, side);
}

FreeVector create_adjoint(int letter, const FreeVector& v, Side side) {
  check_letter(letter, v.d());
  FreeVector out(v.d(), v.degree());
  for (const auto& [u, c] : v.terms()) {
    if (u.empty()) continue;
    if (side == Side::Left && u[0] == letter)
      out.add(u.drop_front(1), c);
    else if (side == Side::Right && u[u.length() - 1] == letter)
      out.add(u.drop_back(1), c);
  }
  return out;
}

Scalar inner(const FreeVector& v, const FreeVector& w) {
  check_same_space(v, w);
  Scalar s = 0;
  // Walk the smaller map and probe the larger.
  const auto& small = v.terms().size() <= w.terms().size() ? v.terms() : w.terms();
  const bool v_small = &small == &v.terms();
  for (const auto& [u, c] : small) {
    if (v_small)
      s += c * std::conj(w.coeff(u));
    else
      s += v.coeff(u) * std::conj(c);
  }
  return s;
}

FreeVector transpose_unitary(const FreeVector& v) {
  FreeVector out(v.d(), v.degree());
  for (const auto& [u, c] : v.terms()) out.set(transpose(u), c);
  return out;
}

Truncated apply_poly(const FreePoly& p, const FreeVector& v) {
  if (p.d() != v.d()) fail_input("alphabet_mismatch", "polynomial and vector alphabets differ");
  Truncated out{FreeVector(v.d(), v.degree()), 0.0};
  FreeVector untruncated(v.d(), v.degree() + std::max(p.max_length(), 0));
  for (const auto& [a, ca] : p.terms())
    for (const auto& [u, cu] : v.terms())
      untruncated.add(p.side() == Side::Left ? concat(a, u) : concat(u, a), ca * cu);
  for (const auto& [u, c] : untruncated.terms()) {
    if (static_cast<int>(u.length()) > v.degree())
      out.dropped_squared_norm += std::norm(c);
    else
      out.vector.set(u, c);
  }
  return out;
}

// Matrices -------------------------------------------------------------------

SparseMatrix word_creation_matrix(const Word& w, Side side, int d, int degree) {
  if (w.alphabet() != d) fail_input("alphabet_mismatch", "word alphabet differs from space alphabet");
  const auto n = static_cast<Eigen::Index>(basis_size(d, degree));
  std::vector<Eigen::Triplet<Scalar>> entries;
  for (Eigen::Index col = 0; col < n; ++col) {
    Word u = word_at(static_cast<std::size_t>(col), d);
    if (static_cast<int>(u.length() + w.length()) > degree) continue;
    Word image = side == Side::Left ? concat(w, u) : concat(u, w);
    entries.emplace_back(static_cast<Eigen::Index>(graded_index(image)), col, Scalar(1));
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

SparseMatrix creation_matrix(int letter, Side side, int d, int degree) {
  check_letter(letter, d);
  return word_creation_matrix(Word({letter}, d), side, d, degree);
}

SparseMatrix transpose_matrix(int d, int degree) {
  const auto n = static_cast<Eigen::Index>(basis_size(d, degree));
  std::vector<Eigen::Triplet<Scalar>> entries;
  entries.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index col = 0; col < n; ++col) {
    Word u = word_at(static_cast<std::size_t>(col), d);
    entries.emplace_back(static_cast<Eigen::Index>(graded_index(transpose(u))), col, Scalar(1));
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

// Free algebra ---------------------------------------------------------------

FreeVector free_product(const FreeVector& a, const FreeVector& b, int degree) {
  if (a.d() != b.d()) fail_input("alphabet_mismatch", "free product of different alphabets");
  FreeVector out(a.d(), degree);
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms())
      if (static_cast<int>(x.length() + y.length()) <= degree) out.add(concat(x, y), cx * cy);
  return out;
}

FreeVector right_divide(const FreeVector& num, const FreeVector& den, int degree, std::size_t cap) {
  if (num.d() != den.d()) fail_input("alphabet_mismatch", "free division of different alphabets");
  const int d = num.d();
  const Scalar constant = den.coeff(Word(d));
  if (constant == Scalar(0)) fail_input("singular_divisor", "divisor has zero constant coefficient");
  const auto n = basis_size(d, degree);
  if (n > cap)
    throw Error(ErrorKind::ResourceCap, "basis_cap_exceeded",
                "series division basis of size " + std::to_string(n) + " exceeds cap");
  std::vector<Scalar> q(n, Scalar(0));
  std::vector<std::pair<Word, Scalar>> tail;  // nonconstant terms of den
  for (const auto& [y, c] : den.terms())
    if (!y.empty()) tail.emplace_back(y, c);
  for (std::size_t idx = 0; idx < n; ++idx) {
    Word g = word_at(idx, d);
    Scalar acc = static_cast<int>(g.length()) <= num.degree() ? num.coeff(g) : Scalar(0);
    for (const auto& [y, c] : tail) {
      if (y.length() > g.length()) break;  // tail is sorted by length
      if (!std::equal(y.letters().begin(), y.letters().end(),
                      g.letters().end() - static_cast<std::ptrdiff_t>(y.length())))
        continue;
      acc -= q[graded_index(g.drop_back(y.length()))] * c;
    }
    q[idx] = acc / constant;
  }
  FreeVector out(d, degree);
  for (std::size_t idx = 0; idx < n; ++idx)
    if (q[idx] != Scalar(0)) out.set(word_at(idx, d), q[idx]);
  return out;
}

}  // namespace cnpfact
