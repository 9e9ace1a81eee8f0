#include <cctype>
#include <cstdlib>

#include "schmearlab/error.hpp"
#include "schmearlab/sequences.hpp"

namespace schmearlab {

namespace {

class Parser {
 public:
  Parser(std::string_view text, int m, int d, std::size_t line, std::size_t col_offset)
      : text_(text), m_(m), d_(d), line_(line), col_offset_(col_offset) {}

  std::vector<Block> family() {
    std::vector<Block> blocks;
    skip_space();
    while (!at_end()) {
      GroupElement atom = parse_atom();
      ExponentPoly e = ExponentPoly::constant(1);
      skip_space();
      if (peek() == '^') {
        ++pos_;
        e = parse_exponent(true);
      }
      if (e.degree() < 0) {
        skip_space();
        continue;
      }
      blocks.push_back(Block{std::move(atom), e});
      skip_space();
    }
    return blocks;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const {
    throw SyntaxError(what + " at line " + std::to_string(line_) + ", column " +
                          std::to_string(col_offset_ + pos + 1),
                      line_, col_offset_ + pos + 1);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_space() {
    while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  GroupElement parse_atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      GroupElement g = identity_element(m_, d_);
      skip_space();
      while (peek() != ')') {
        if (at_end()) fail("unbalanced '('");
        GroupElement inner = parse_atom();
        skip_space();
        if (peek() == '^') {
          ++pos_;
          const std::size_t at = pos_;
          const ExponentPoly e = parse_exponent(false);
          if (!e.is_constant()) fail_at("exponents inside parentheses must be constant", at);
          const long long k = e.coeffs[0];
          if (std::llabs(k) > 1000000) fail_at("constant exponent too large inside parentheses", at);
          inner = power(inner, k);
        }
        g = compose(g, inner);
        skip_space();
      }
      ++pos_;
      return g;
    }
    if (c == '1') {
      ++pos_;
      return identity_element(m_, d_);
    }
    const Letter x = char_letter(c);
    if (x == 0) fail(std::string("unexpected character '") + c + "'");
    const int gen = generator_of(x);
    if (gen > m_ + d_)
      fail(std::string("letter '") + c + "' is outside F_" + std::to_string(m_) + " x Z^" + std::to_string(d_));
    ++pos_;
    GroupElement g = identity_element(m_, d_);
    if (gen <= m_)
      g.word = Word::from_reduced({x});
    else
      g.z[static_cast<std::size_t>(gen - m_ - 1)] = x > 0 ? 1 : -1;
    return g;
  }

  long long parse_integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > 100000000000LL) fail("integer too large");
      v = v * 10 + (text_[pos_++] - '0');
    }
    return v;
  }

  // Exponent after '^': integer, n, -integer, -n, or {polynomial}.
  ExponentPoly parse_exponent(bool allow_n) {
    skip_space();
    const std::size_t at = pos_;
    ExponentPoly e;
    if (peek() == '{') {
      ++pos_;
      e = parse_poly();
      skip_space();
      if (peek() != '}') fail("expected '}'");
      ++pos_;
    } else {
      bool neg = false;
      if (peek() == '-') {
        neg = true;
        ++pos_;
      }
      if (peek() == 'n') {
        ++pos_;
        e = ExponentPoly::monomial(1, 1);
      } else {
        e = ExponentPoly::constant(parse_integer());
      }
      if (neg) e = -e;
    }
    if (!allow_n && !e.is_constant()) fail_at("exponents inside parentheses must be constant", at);
    return e;
  }

  ExponentPoly parse_poly() {
    ExponentPoly p;
    skip_space();
    bool first = true;
    while (true) {
      skip_space();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_space();
      } else if (!first) {
        break;
      }
      long long coeff = 1;
      bool have_coeff = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = parse_integer();
        have_coeff = true;
        skip_space();
        if (peek() == '*') {
          ++pos_;
          skip_space();
          if (peek() != 'n') fail("expected 'n' after '*'");
        }
      }
      int degree = 0;
      if (peek() == 'n') {
        ++pos_;
        degree = 1;
        skip_space();
        if (peek() == '^') {
          ++pos_;
          skip_space();
          const std::size_t at = pos_;
          const long long k = parse_integer();
          if (k > 4) fail_at("polynomial degree is limited to 4", at);
          degree = static_cast<int>(k);
        }
      } else if (!have_coeff) {
        fail("expected a term of a polynomial in n");
      }
      p = p + ExponentPoly::monomial(sign * coeff, degree);
      first = false;
    }
    return p;
  }

  std::string_view text_;
  int m_;
  int d_;
  std::size_t line_;
  std::size_t col_offset_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

SequenceFamily parse_line(std::string_view text, int m, int d, std::size_t line, std::size_t col_offset) {
  if (m < 1 || d < 0 || m + d > 26) throw DomainError("family parser needs 1 <= m and m + d <= 26");
  Parser p(text, m, d, line, col_offset);
  auto blocks = p.family();
  return SequenceFamily(m, d, std::move(blocks), std::string(trim(text)));
}

}  // namespace

SequenceFamily parse_family(std::string_view text, int m, int d) {
  if (trim(text).empty()) throw SyntaxError("empty family at line 1, column 1", 1, 1);
  return parse_line(text, m, d, 1, 0);
}

LongElement parse_element(std::string_view text, int m, int d) {
  const SequenceFamily fam = parse_family(text, m, d);
  for (const auto& b : *fam.blocks())
    if (!b.exponent.is_constant())
      throw SyntaxError("an element may not depend on n at line 1, column 1", 1, 1);
  return fam.evaluate(fam.n0());
}

std::vector<SequenceFamily> parse_family_list(std::string_view text, int m, int d) {
  std::vector<SequenceFamily> out;
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    const std::size_t nl = text.find('\n');
    std::string_view row = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    const std::string_view t = trim(row);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(parse_line(row, m, d, line, 0));
  }
  return out;
}

}  // namespace schmearlab
