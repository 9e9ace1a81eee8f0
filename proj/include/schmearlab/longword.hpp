#pragma once

// Compressed reduced words for sequence families.
//
// a^n b^{n^2} at n = 2^12 already has 1.7e7 letters, and the averaged
// families g^s h^t built from such words reach 1e15 letters and beyond.
// A LongWord is an immutable DAG of runs x^k and repeated concatenations
// (child, reps). Every node caches the data all displacement functionals
// factor through (letter counts per generator, adjacent same-generator
// pairs, end letters) plus two polynomial hashes of its expansion, which
// give common prefixes and cancellation lengths in polylogarithmic time.
//
// Invariant: the expansion of every node is a freely reduced word.

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "schmearlab/exactnum.hpp"
#include "schmearlab/freegroup.hpp"

namespace schmearlab {

// Summary of a reduced word sufficient for every orbit distance and
// vertical translation used by the library.
struct WordStats {
  int m = 0;
  BigInt length = 0;
  std::vector<BigInt> abs_count;     // per generator, index g - 1
  std::vector<BigInt> signed_count;  // per generator, index g - 1
  BigInt same_pairs = 0;             // adjacent positions with equal generator
  Letter first = 0;
  Letter last = 0;

  explicit WordStats(int m_ = 0)
      : m(m_), abs_count(static_cast<std::size_t>(m_)), signed_count(static_cast<std::size_t>(m_)) {}
};

WordStats stats_of(const Word& w, int m);
// Stats of u*v, assuming the junction does not cancel.
WordStats stats_concat(const WordStats& u, const WordStats& v);
// Stats of u^k (k >= 1), assuming u is straight.
WordStats stats_power(const WordStats& u, const BigInt& k);

namespace detail {
struct LongNode;
}

class LongWord {
 public:
  LongWord() = default;
  explicit LongWord(int m) : m_(m) {}

  static LongWord from_word(const Word& w, int m);
  static LongWord run(Letter x, const BigInt& count, int m);

  int m() const { return m_; }
  bool empty() const { return root_ == nullptr; }
  const BigInt& length() const;
  Letter front() const;
  Letter back() const;
  const WordStats& stats() const;

  Letter letter_at(const BigInt& pos) const;
  // The first min(k, length) letters.
  Word prefix_word(std::size_t k) const;
  // Full expansion; throws DomainError if longer than max_letters.
  Word to_word(std::size_t max_letters = 1u << 24) const;

  LongWord inverse() const;
  LongWord take(const BigInt& k) const;  // prefix of length k
  LongWord drop(const BigInt& k) const;  // remove the first k letters

  bool is_straight() const;
  // Same rule as straighten(Word, m).
  LongWord straighten() const;

  // Reduced product; cancellation of any length is handled.
  friend LongWord operator*(const LongWord& u, const LongWord& v);
  // w^k for any integer k (non-straight bases are cyclically reduced first).
  LongWord pow(const BigInt& k) const;

  // Hash of the expansion's first k letters (two independent hashes).
  std::array<std::uint64_t, 2> prefix_hash(const BigInt& k) const;

  // Compact human-readable form such as "a^16 b^256" or "(ab)^9 a".
  std::string describe() const;

 private:
  LongWord(int m, std::shared_ptr<const detail::LongNode> root) : m_(m), root_(std::move(root)) {}
  friend BigInt common_prefix_length(const LongWord&, const LongWord&);

  int m_ = 0;
  std::shared_ptr<const detail::LongNode> root_;
};

// Exact for short words; hashed binary search with an exact mismatch check
// otherwise.
BigInt common_prefix_length(const LongWord& u, const LongWord& v);

// <w, c> in F_m x Z^d with compressed w and arbitrary precision c.
struct LongElement {
  LongWord word;
  std::vector<BigInt> z;

  int m() const { return word.m(); }
  std::size_t d() const { return z.size(); }
  std::string describe() const;
};

LongElement to_long(const GroupElement& g);
LongElement compose(const LongElement& g, const LongElement& h);
LongElement pow(const LongElement& g, const BigInt& k);
// Straightens the word part, leaving c unchanged.
LongElement straighten(const LongElement& g);

}  // namespace schmearlab
