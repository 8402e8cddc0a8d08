// SPDX-License-Identifier: Apache-2.0
#include "cnpfact/words.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace cnpfact {

namespace {

void check_alphabet(int d) {
  if (d < 1) fail_input("bad_alphabet", "alphabet size must be positive, got " + std::to_string(d));
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a)
    return std::numeric_limits<std::size_t>::max();
  return a * b;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
  if (b > std::numeric_limits<std::size_t>::max() - a) return std::numeric_limits<std::size_t>::max();
  return a + b;
}

void check_cap(std::size_t size, std::size_t cap, const char* what) {
  if (size > cap)
    throw Error(ErrorKind::ResourceCap, "basis_cap_exceeded",
                std::string(what) + " basis of size " + std::to_string(size) +
                    " exceeds cap " + std::to_string(cap));
}

}  // namespace

Word::Word(int alphabet) : alphabet_(alphabet) { check_alphabet(alphabet); }

Word::Word(std::vector<int> letters, int alphabet) : letters_(std::move(letters)), alphabet_(alphabet) {
  check_alphabet(alphabet);
  for (int l : letters_)
    if (l < 1 || l > alphabet)
      fail_input("letter_out_of_range",
                 "letter " + std::to_string(l) + " outside 1.." + std::to_string(alphabet));
}

Word Word::prepended(int letter) const {
  std::vector<int> out;
  out.reserve(letters_.size() + 1);
  out.push_back(letter);
  out.insert(out.end(), letters_.begin(), letters_.end());
  return Word(std::move(out), alphabet_);
}

Word Word::appended(int letter) const {
  std::vector<int> out = letters_;
  out.push_back(letter);
  return Word(std::move(out), alphabet_);
}

Word Word::drop_front(std::size_t count) const {
  count = std::min(count, letters_.size());
  return Word(std::vector<int>(letters_.begin() + static_cast<std::ptrdiff_t>(count), letters_.end()),
              alphabet_);
}

Word Word::drop_back(std::size_t count) const {
  count = std::min(count, letters_.size());
  return Word(std::vector<int>(letters_.begin(), letters_.end() - static_cast<std::ptrdiff_t>(count)),
              alphabet_);
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return a.letters_ <=> b.letters_;
}

MultiIndex::MultiIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_)
    if (e < 0) fail_input("negative_exponent", "multi-index entries must be non-negative");
  total_ = std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) fail_input("dimension_mismatch", "multi-index dimensions differ");
  std::vector<int> out(a.exponents_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b.exponents_[k];
  return MultiIndex(std::move(out));
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  if (a.dim() != b.dim()) fail_input("dimension_mismatch", "multi-index dimensions differ");
  std::vector<int> out(a.exponents_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= b.exponents_[k];
  return MultiIndex(std::move(out));
}

bool MultiIndex::dominates(const MultiIndex& b) const {
  if (dim() != b.dim()) return false;
  for (std::size_t k = 0; k < exponents_.size(); ++k)
    if (exponents_[k] < b.exponents_[k]) return false;
  return true;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.total_ <=> b.total_; c != 0) return c;
  // Larger leading exponent first, so z_1 sorts before z_2.
  return b.exponents_ <=> a.exponents_;
}

Word transpose(const Word& w) {
  std::vector<int> out(w.letters().rbegin(), w.letters().rend());
  return Word(std::move(out), w.alphabet());
}

Word concat(const Word& u, const Word& v) {
  if (u.alphabet() != v.alphabet()) fail_input("alphabet_mismatch", "cannot concatenate words over different alphabets");
  std::vector<int> out = u.letters();
  out.insert(out.end(), v.letters().begin(), v.letters().end());
  return Word(std::move(out), u.alphabet());
}

MultiIndex letter_count(const Word& w) {
  std::vector<int> counts(static_cast<std::size_t>(w.alphabet()), 0);
  for (int l : w.letters()) ++counts[static_cast<std::size_t>(l - 1)];
  return MultiIndex(std::move(counts));
}

std::size_t basis_size(int d, int max_length) {
  check_alphabet(d);
  if (max_length < 0) return 0;
  std::size_t total = 0, layer = 1;
  for (int k = 0; k <= max_length; ++k) {
    total = saturating_add(total, layer);
    layer = saturating_mul(layer, static_cast<std::size_t>(d));
  }
  return total;
}

std::size_t graded_index(const Word& w) {
  const auto d = static_cast<std::size_t>(w.alphabet());
  std::size_t offset = basis_size(w.alphabet(), static_cast<int>(w.length()) - 1);
  std::size_t within = 0;
  for (int l : w.letters()) within = within * d + static_cast<std::size_t>(l - 1);
  return offset + within;
}

Word word_at(std::size_t index, int d) {
  check_alphabet(d);
  std::size_t length = 0, layer = 1;
  while (index >= layer) {
    index -= layer;
    layer *= static_cast<std::size_t>(d);
    ++length;
  }
  std::vector<int> letters(length);
  for (std::size_t k = length; k-- > 0;) {
    letters[k] = static_cast<int>(index % static_cast<std::size_t>(d)) + 1;
    index /= static_cast<std::size_t>(d);
  }
  return Word(std::move(letters), d);
}

std::vector<Word> enumerate_words(int d, int max_length, std::size_t cap) {
  check_alphabet(d);
  if (max_length < 0) fail_input("negative_degree", "maximum word length must be non-negative");
  const std::size_t size = basis_size(d, max_length);
  check_cap(size, cap, "Fock");
  std::vector<Word> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) out.push_back(word_at(i, d));
  return out;
}

std::vector<Word> words_with_count(const MultiIndex& n) {
  const int d = std::max(n.dim(), 1);
  std::vector<int> letters;
  for (int k = 0; k < n.dim(); ++k) letters.insert(letters.end(), static_cast<std::size_t>(n[static_cast<std::size_t>(k)]), k + 1);
  std::vector<Word> out;
  do {
    out.emplace_back(letters, d);
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

double multinomial(const MultiIndex& n) {
  // Product of binomials C(n_1 + ... + n_k, n_k); each step stays integral.
  unsigned __int128 acc = 1;
  bool exact = true;
  int running = 0;
  for (int e : n.exponents()) {
    running += e;
    unsigned __int128 binom = 1;
    for (int j = 1; j <= e; ++j) binom = binom * static_cast<unsigned>(running - e + j) / static_cast<unsigned>(j);
    acc *= binom;
    if (acc > (static_cast<unsigned __int128>(1) << 100)) {
      exact = false;
      break;
    }
  }
  if (exact) return static_cast<double>(acc);
  double log_value = std::lgamma(n.total() + 1.0);
  for (int e : n.exponents()) log_value -= std::lgamma(e + 1.0);
  return std::exp(log_value);
}

std::size_t monomial_count(int d, int max_degree) {
  check_alphabet(d);
  if (max_degree < 0) return 0;
  // C(max_degree + d, d)
  long double value = 1;
  for (int j = 1; j <= d; ++j) value = value * (max_degree + j) / j;
  if (value > static_cast<long double>(std::numeric_limits<std::size_t>::max()))
    return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(std::llround(static_cast<double>(value)));
}

std::vector<MultiIndex> enumerate_multi_indices(int d, int max_degree, std::size_t cap) {
  check_alphabet(d);
  if (max_degree < 0) fail_input("negative_degree", "maximum degree must be non-negative");
  check_cap(monomial_count(d, max_degree), cap, "monomial");
  std::vector<MultiIndex> out;
  std::vector<int> e(static_cast<std::size_t>(d), 0);
  for (int total = 0; total <= max_degree; ++total) {
    // Compositions of `total` into d parts, leading exponent descending.
    std::fill(e.begin(), e.end(), 0);
    e[0] = total;
    while (true) {
      out.emplace_back(e);
      // Next composition in the order (t,0,..) > (t-1,1,..) > ...
      int k = d - 2;
      while (k >= 0 && e[static_cast<std::size_t>(k)] == 0) --k;
      if (k < 0) break;
      --e[static_cast<std::size_t>(k)];
      int tail = 1;
      for (int j = k + 1; j < d; ++j) tail += e[static_cast<std::size_t>(j)], e[static_cast<std::size_t>(j)] = 0;
      e[static_cast<std::size_t>(k + 1)] = tail;
    }
  }
  return out;
}

}  // namespace cnpfact
