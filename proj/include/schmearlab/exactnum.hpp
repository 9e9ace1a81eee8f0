#pragma once

// Exact arithmetic in Q(sqrt 2). Every orbit distance of the model spaces
// (unit and stretched trees, the diamond complex) lives in this field, so
// all comparisons in the library are exact sign tests; doubles only appear
// when values are reported.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace schmearlab {

using BigInt = mpz_class;
using Rational = mpq_class;

class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a, Rational b = 0);  // a + b*sqrt(2)
  QuadExt(long a) : QuadExt(Rational(a)) {}
  QuadExt(int a) : QuadExt(Rational(a)) {}

  static QuadExt sqrt2() { return {0, 1}; }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  // -1, 0 or +1; decided without floating point.
  int sign() const;

  QuadExt conjugate() const { return {a_, -b_}; }
  // a^2 - 2 b^2; nonzero for every nonzero element.
  Rational norm() const { return a_ * a_ - 2 * b_ * b_; }

  QuadExt operator-() const { return {-a_, -b_}; }
  QuadExt& operator+=(const QuadExt& y);
  QuadExt& operator-=(const QuadExt& y);
  QuadExt& operator*=(const QuadExt& y);
  QuadExt& operator/=(const QuadExt& y);  // throws DomainError("zero divisor")

  friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
  friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
  friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
  friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

  // Canonical text form "a + b r2" (e.g. "3 + 2 r2", "-1/2 + 0 r2",
  // "1 - 1/3 r2").
  std::string to_string() const;

  // Accepts the canonical form and the shorthands "3", "-2/5", "r2",
  // "2 r2", "-r2", "1 - r2". Throws SyntaxError.
  static QuadExt parse(std::string_view text);

 private:
  Rational a_;
  Rational b_;
};

enum class ArithOp { add, sub, mul, div };
enum class Ordering { LT, EQ, GT };

QuadExt quad_arith(const QuadExt& x, const QuadExt& y, ArithOp op);
Ordering quad_compare(const QuadExt& x, const QuadExt& y);

// Dyadic rational r with |r - x| <= 2^-precision (hence also within
// 2^-precision * max(1, |x|)). Requires precision >= 16.
Rational quad_to_real(const QuadExt& x, unsigned precision);

// Nearest-ish double (error well below one ulp of the result).
double to_double(const QuadExt& x);
double to_double(const Rational& x);

// Exact floor, computed with exact comparisons against integers.
BigInt floor(const QuadExt& x);

// Fits-in-int64 guard for values that are exported as JSON numbers.
bool fits_int64(const BigInt& v);

std::string to_string(const Rational& q);

}  // namespace schmearlab
