// SPDX-License-Identifier: Apache-2.0
#ifndef CNPFACT_WORDS_HPP
#define CNPFACT_WORDS_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "cnpfact/core.hpp"

namespace cnpfact {

/// A word i_1 i_2 ... i_k in the free semigroup on `alphabet` letters.
///
/// Letters are 1-based. Words order graded-lexicographically: shorter words
/// first, then lexicographically by letters. This order is the canonical
/// basis order for every Fock-space matrix in the library.
class Word {
 public:
  explicit Word(int alphabet = 1);
  Word(std::vector<int> letters, int alphabet);
  Word(std::initializer_list<int> letters, int alphabet)
      : Word(std::vector<int>(letters), alphabet) {}

  int alphabet() const noexcept { return alphabet_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const std::vector<int>& letters() const noexcept { return letters_; }
  int operator[](std::size_t k) const { return letters_[k]; }

  Word prepended(int letter) const;
  Word appended(int letter) const;
  /// Drops the first (or last) `count` letters.
  Word drop_front(std::size_t count) const;
  Word drop_back(std::size_t count) const;

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<int> letters_;
  int alphabet_;
};

/// Exponent vector n = (n_1, ..., n_d) with |n| = sum n_k.
///
/// Ordered by total degree, then so that z_1 precedes z_2: (1,0) < (0,1).
/// This matches the push-forward of the word order under letter counting.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents)
      : MultiIndex(std::vector<int>(exponents)) {}
  static MultiIndex zero(int d) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0)); }

  int dim() const noexcept { return static_cast<int>(exponents_.size()); }
  int total() const noexcept { return total_; }
  const std::vector<int>& exponents() const noexcept { return exponents_; }
  int operator[](std::size_t k) const { return exponents_[k]; }

  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  /// Componentwise a - b; requires b <= a entrywise.
  friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
  bool dominates(const MultiIndex& b) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.exponents_ == b.exponents_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<int> exponents_;
  int total_ = 0;
};

Word transpose(const Word& w);
Word concat(const Word& u, const Word& v);
MultiIndex letter_count(const Word& w);

/// Number of words of length <= max_length over d letters; saturates at SIZE_MAX.
std::size_t basis_size(int d, int max_length);

/// Position of `w` in the graded-lexicographic enumeration.
std::size_t graded_index(const Word& w);
Word word_at(std::size_t index, int d);

/// All words of length <= max_length in graded order. Throws ResourceCap
/// when the list would exceed `cap`.
std::vector<Word> enumerate_words(int d, int max_length, std::size_t cap = kDefaultBasisCap);

/// All words whose letter count equals n, in lexicographic order.
std::vector<Word> words_with_count(const MultiIndex& n);

/// |n|! / (n_1! ... n_d!), computed in exact integer arithmetic while it fits.
double multinomial(const MultiIndex& n);

/// Multi-indices of total degree <= max_degree in canonical order.
std::vector<MultiIndex> enumerate_multi_indices(int d, int max_degree,
                                                std::size_t cap = kDefaultBasisCap);

/// Number of multi-indices in d variables of total degree <= max_degree.
std::size_t monomial_count(int d, int max_degree);

}  // namespace cnpfact

#endif  // CNPFACT_WORDS_HPP
