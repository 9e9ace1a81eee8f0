#include "schmearlab/freegroup.hpp"

#include <algorithm>
#include <cstdlib>

#include "schmearlab/error.hpp"

namespace schmearlab {

char letter_char(Letter x) {
  const int g = generator_of(x);
  if (g < 1 || g > 26) throw DomainError("letter index out of range: " + std::to_string(x));
  return static_cast<char>((x > 0 ? 'a' : 'A') + g - 1);
}

Letter char_letter(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a' + 1;
  if (c >= 'A' && c <= 'Z') return -(c - 'A' + 1);
  return 0;
}

Word Word::from_reduced(std::vector<Letter> letters) {
  Word w;
  w.letters_ = std::move(letters);
  return w;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& x : out) x = -x;
  return from_reduced(std::move(out));
}

Word reduce(std::span<const Letter> letters, int m) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    if (x == 0 || generator_of(x) > m)
      throw DomainError("letter index out of range: " + std::to_string(x) + " (m = " +
                        std::to_string(m) + ")");
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return Word::from_reduced(std::move(out));
}

Word multiply(const Word& u, const Word& v) {
  auto a = u.letters();
  auto b = v.letters();
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[a.size() - 1 - k] == -b[k]) ++k;
  std::vector<Letter> out(a.begin(), a.end() - static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
  return Word::from_reduced(std::move(out));
}

bool is_straight(const Word& w) { return !w.empty() && w.back() != -w.front(); }

Word straighten(const Word& w, int m) {
  if (is_straight(w)) return w;
  if (w.empty()) return Word::from_reduced({1});
  if (m < 2) throw DomainError("straighten requires m >= 2");
  const int avoid = generator_of(w.front());
  for (int i = 0; i < 2 * m; ++i) {
    const Letter eps = detail::nth_letter(m, i);
    if (generator_of(eps) == avoid) continue;
    // w ends with front^-1 and eps differs from both, so w*eps is reduced
    // and its last letter eps is not front^-1.
    std::vector<Letter> out(w.letters().begin(), w.letters().end());
    out.push_back(eps);
    return Word::from_reduced(std::move(out));
  }
  throw DomainError("straighten requires m >= 2");
}

std::size_t common_prefix_length(const Word& u, const Word& v) {
  auto a = u.letters();
  auto b = v.letters();
  auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  return static_cast<std::size_t>(ia - a.begin());
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  s.reserve(w.length());
  for (Letter x : w.letters()) s.push_back(letter_char(x));
  return s;
}

Word parse_word(std::string_view text, int m) {
  std::vector<Letter> raw;
  std::size_t col = 0;
  for (char c : text) {
    ++col;
    if (c == ' ' || c == '\t') continue;
    if (c == '1' && text.size() == 1) break;
    const Letter x = char_letter(c);
    if (x == 0 || generator_of(x) > m)
      throw SyntaxError(std::string("invalid letter '") + c + "' in word", 1, col);
    raw.push_back(x);
  }
  return reduce(raw, m);
}

GroupElement identity_element(int m, int d) {
  return GroupElement{m, Word{}, std::vector<long long>(static_cast<std::size_t>(d), 0)};
}

GroupElement make_element(int m, Word w, std::vector<long long> z) {
  for (Letter x : w.letters())
    if (generator_of(x) > m) throw DomainError("letter index out of range");
  return GroupElement{m, std::move(w), std::move(z)};
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  if (g.m != h.m || g.z.size() != h.z.size())
    throw DomainError("compose: mismatched ambient group");
  GroupElement out{g.m, multiply(g.word, h.word), g.z};
  for (std::size_t i = 0; i < out.z.size(); ++i) out.z[i] += h.z[i];
  return out;
}

GroupElement inverse(const GroupElement& g) {
  GroupElement out{g.m, g.word.inverse(), g.z};
  for (auto& c : out.z) c = -c;
  return out;
}

GroupElement power(const GroupElement& g, long long k) {
  GroupElement base = k < 0 ? inverse(g) : g;
  GroupElement out = identity_element(g.m, static_cast<int>(g.z.size()));
  for (long long i = 0; i < std::llabs(k); ++i) out = compose(out, base);
  return out;
}

long long word_metric_length(const GroupElement& g) {
  long long len = static_cast<long long>(g.word.length());
  for (long long c : g.z) len += std::llabs(c);
  return len;
}

std::string to_string(const GroupElement& g) {
  std::string s = "<" + to_string(g.word) + ", (";
  for (std::size_t i = 0; i < g.z.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.z[i]);
  }
  return s + ")>";
}

}  // namespace schmearlab
