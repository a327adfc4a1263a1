#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace jrp {

using BigInt = mpz_class;

/// Exact fraction kept in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const BigInt& value);
  explicit Rational(const mpq_class& value);
  // Integer expression templates (e.g. a * b on BigInt) evaluate to BigInt.
  template <class Expr>
  explicit Rational(const __gmp_expr<mpz_t, Expr>& value) : Rational(BigInt(value)) {}

  /// Accepts "n", "n/d", with optional leading sign on the numerator only.
  /// Throws jrp::Error(kMalformedDocument) on anything else, including d = 0.
  static Rational parse(std::string_view text);

  /// Exact binary value of a finite double.
  static Rational from_double(double value);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }
  bool is_zero() const { return sign() == 0; }

  double to_double() const { return value_.get_d(); }
  /// Always "num/den", the serialized form.
  std::string str() const;
  /// Presentation only: `digits` significant decimal digits.
  std::string decimal(int digits = 12) const;

  Rational abs() const;
  Rational inverse() const;
  BigInt floor() const;
  BigInt ceil() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

/// Smallest positive rational that is an integer multiple of both a and b.
Rational lcm(const Rational& a, const Rational& b);
/// Largest positive rational of which both a and b are integer multiples.
Rational gcd(const Rational& a, const Rational& b);

/// Exact square root if r is the square of a rational, else false.
bool exact_sqrt(const Rational& r, Rational& out);

/// Nearest double to sqrt(r), computed in extended precision.
double sqrt_approx(const Rational& r);

/// Best rational approximation (continued-fraction convergent) of sqrt(r)
/// within relative tolerance `rel_tol`.
Rational sqrt_rational(const Rational& r, double rel_tol = 1e-15);

/// Continued-fraction rationalisation of a double within relative tolerance.
Rational rationalize(double value, double rel_tol = 1e-15);

}  // namespace jrp

template <>
struct std::hash<jrp::Rational> {
  std::size_t operator()(const jrp::Rational& r) const noexcept;
};
