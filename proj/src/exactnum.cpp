#include "schmearlab/exactnum.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "schmearlab/error.hpp"

namespace schmearlab {

QuadExt::QuadExt(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
}

int QuadExt::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2. Equality is impossible because
  // sqrt(2) is irrational.
  const int cmp_sq = cmp(Rational(a_ * a_), Rational(2 * b_ * b_));
  return cmp_sq > 0 ? sa : sb;
}

QuadExt& QuadExt::operator+=(const QuadExt& y) {
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& y) {
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& y) {
  Rational a = a_ * y.a_ + 2 * b_ * y.b_;
  Rational b = a_ * y.b_ + b_ * y.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& y) {
  if (y.is_zero()) throw DomainError("zero divisor");
  const Rational n = y.norm();
  *this *= y.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string QuadExt::to_string() const {
  std::string out = a_.get_str();
  if (sgn(b_) < 0) {
    out += " - ";
    out += Rational(-b_).get_str();
  } else {
    out += " + ";
    out += b_.get_str();
  }
  out += " r2";
  return out;
}

namespace {

class QuadParser {
 public:
  explicit QuadParser(std::string_view s) : s_(s) {}

  QuadExt run() {
    skip_ws();
    if (at_end()) fail("empty QuadExt literal");
    Rational a = 0, b = 0;
    bool first = true;
    bool seen_rational = false, seen_root = false;
    while (true) {
      skip_ws();
      if (at_end()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Rational coeff = 1;
      bool have_number = false;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = number();
        have_number = true;
        skip_ws();
      }
      if (!at_end() && peek() == 'r') {
        get();
        if (at_end() || get() != '2') fail("expected 'r2'");
        if (seen_root) fail("duplicate r2 term");
        seen_root = true;
        b = sign * coeff;
      } else {
        if (!have_number) fail("expected a number or r2");
        if (seen_rational) fail("duplicate rational term");
        seen_rational = true;
        a = sign * coeff;
      }
    }
    return {a, b};
  }

 private:
  Rational number() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    std::string num(s_.substr(start, pos_ - start));
    std::string den = "1";
    skip_ws();
    if (!at_end() && peek() == '/') {
      get();
      skip_ws();
      std::size_t ds = pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (ds == pos_) fail("expected denominator");
      den = std::string(s_.substr(ds, pos_ - ds));
    }
    BigInt d(den);
    if (d == 0) fail("zero denominator");
    Rational q(BigInt(num), d);
    q.canonicalize();
    return q;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError("QuadExt '" + std::string(s_) + "': " + msg, 1, pos_ + 1);
  }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  char get() { return s_[pos_++]; }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// floor(sqrt(2) * q * 2^k) for q >= 0, exactly.
BigInt scaled_root2(const Rational& q, unsigned k) {
  // sqrt(2) p / r * 2^k = sqrt(2 p^2 4^k) / r.
  BigInt radicand = 2 * q.get_num() * q.get_num();
  mpz_mul_2exp(radicand.get_mpz_t(), radicand.get_mpz_t(), 2 * k);
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), root.get_mpz_t(), q.get_den().get_mpz_t());
  return out;
}

}  // namespace

QuadExt QuadExt::parse(std::string_view text) { return QuadParser(text).run(); }

QuadExt quad_arith(const QuadExt& x, const QuadExt& y, ArithOp op) {
  switch (op) {
    case ArithOp::add: return x + y;
    case ArithOp::sub: return x - y;
    case ArithOp::mul: return x * y;
    case ArithOp::div: return x / y;
  }
  return {};
}

Ordering quad_compare(const QuadExt& x, const QuadExt& y) {
  const auto c = x <=> y;
  if (c < 0) return Ordering::LT;
  if (c > 0) return Ordering::GT;
  return Ordering::EQ;
}

Rational quad_to_real(const QuadExt& x, unsigned precision) {
  if (precision < 16) throw DomainError("quad_to_real: precision must be >= 16");
  const Rational& b = x.sqrt2_part();
  // Truncation of |b| sqrt(2) to a multiple of 2^-(precision+1) plus the
  // floor division by the denominator loses < 2^-precision in total.
  const unsigned k = precision + 1;
  BigInt scaled = scaled_root2(Rational(abs(b)), k);
  Rational approx(scaled, 1);
  mpq_div_2exp(approx.get_mpq_t(), approx.get_mpq_t(), k);
  approx.canonicalize();
  if (sgn(b) < 0) approx = -approx;
  return x.rational_part() + approx;
}

// mpq_get_d truncates; pick the nearer of the truncation and its neighbour.
double to_double(const Rational& x) {
  const double t = x.get_d();
  if (sgn(x) == 0 || !std::isfinite(t)) return t;
  const double away = std::nextafter(t, sgn(x) > 0 ? INFINITY : -INFINITY);
  if (!std::isfinite(away)) return t;
  const Rational et = abs(x - Rational(t)), ea = abs(Rational(away) - x);
  return ea < et ? away : t;
}

double to_double(const QuadExt& x) {
  if (x.is_rational()) return to_double(x.rational_part());
  return to_double(quad_to_real(x, 200));
}

BigInt floor(const QuadExt& x) {
  Rational approx = quad_to_real(x, 32);
  BigInt k;
  mpz_fdiv_q(k.get_mpz_t(), approx.get_num_mpz_t(), approx.get_den_mpz_t());
  // The approximation is within 2^-32, so the true floor is k-1, k or k+1.
  while (QuadExt(Rational(k)) > x) k -= 1;
  while (QuadExt(Rational(k + 1)) <= x) k += 1;
  return k;
}

bool fits_int64(const BigInt& v) {
  static const BigInt lo(std::to_string(std::numeric_limits<long long>::min()));
  static const BigInt hi(std::to_string(std::numeric_limits<long long>::max()));
  return v >= lo && v <= hi;
}

}  // namespace schmearlab
