#pragma once

// Reduced words in the free group F_m and elements <w, c> of F_m x Z^d.
//
// Letters are signed generator indices: +i is the i-th generator, -i its
// inverse (1-based). In text, generator i is the i-th lowercase letter and
// its inverse the matching uppercase letter, so "aB" is a b^-1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schmearlab {

using Letter = int;

constexpr int generator_of(Letter x) { return x < 0 ? -x : x; }
constexpr Letter inverse_letter(Letter x) { return -x; }

char letter_char(Letter x);
// Letter for a character, or 0 if the character is not a letter a-z/A-Z.
Letter char_letter(char c);

class Word {
 public:
  Word() = default;

  // Unchecked: the caller guarantees the letters form a reduced word.
  static Word from_reduced(std::vector<Letter> letters);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Free reduction. Every letter must satisfy 1 <= |x| <= m; throws
// DomainError otherwise.
Word reduce(std::span<const Letter> letters, int m);

// Word product, reduced at the junction.
Word multiply(const Word& u, const Word& v);

// l(w^2) = 2 l(w); the empty word is not straight.
bool is_straight(const Word& w);

// w if w is straight, otherwise w followed by the least generator (positive
// before negative) that is neither the first letter of w nor its inverse.
// The empty word maps to the first generator. Requires m >= 2 unless w is
// already straight.
Word straighten(const Word& w, int m);

std::size_t common_prefix_length(const Word& u, const Word& v);

std::string to_string(const Word& w);
Word parse_word(std::string_view text, int m);

// An element <w, c> of F_m x Z^d.
struct GroupElement {
  int m = 0;
  Word word;
  std::vector<long long> z;

  std::size_t d() const { return z.size(); }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement identity_element(int m, int d);
GroupElement make_element(int m, Word w, std::vector<long long> z);

// Throws DomainError when the ambient groups (m, d) differ.
GroupElement compose(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
GroupElement power(const GroupElement& g, long long k);

// Word-metric length l(w) + |c|_1.
long long word_metric_length(const GroupElement& g);

std::string to_string(const GroupElement& g);

// Visits every reduced word of length <= max_length in shortlex order with
// letters ordered a < A < b < B < ...
template <typename F>
void for_each_reduced_word(int m, std::size_t max_length, F&& visit);

// ---------------------------------------------------------------------------

namespace detail {

inline Letter nth_letter(int m, int i) {
  (void)m;
  return (i % 2 == 0) ? (i / 2 + 1) : -(i / 2 + 1);
}

template <typename F>
void extend_words(int m, std::size_t target, std::vector<Letter>& buf, F& visit) {
  if (buf.size() == target) {
    visit(Word::from_reduced(buf));
    return;
  }
  for (int i = 0; i < 2 * m; ++i) {
    const Letter x = nth_letter(m, i);
    if (!buf.empty() && buf.back() == -x) continue;
    buf.push_back(x);
    extend_words(m, target, buf, visit);
    buf.pop_back();
  }
}

}  // namespace detail

template <typename F>
void for_each_reduced_word(int m, std::size_t max_length, F&& visit) {
  std::vector<Letter> buf;
  buf.reserve(max_length);
  for (std::size_t len = 0; len <= max_length; ++len) detail::extend_words(m, len, buf, visit);
}

}  // namespace schmearlab
