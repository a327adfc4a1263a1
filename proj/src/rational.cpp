#include "jrp/rational.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "jrp/error.hpp"

namespace jrp {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

// Convergents of the continued fraction of `target` until one is within
// rel_tol of it.
Rational best_convergent(const mpq_class& target, double rel_tol) {
  if (sgn(target) == 0) return Rational(0);
  const mpq_class tol = abs(target) * mpq_class(rel_tol);
  mpz_class h2 = 0, h1 = 1;  // h_{k-2}, h_{k-1}
  mpz_class k2 = 1, k1 = 0;
  mpz_class num = target.get_num();
  mpz_class den = target.get_den();
  for (int iter = 0; iter < 4096; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class h = a * h1 + h2;
    mpz_class k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    mpq_class approx(h, k);
    approx.canonicalize();
    if (abs(approx - target) <= tol) return Rational(approx);
    mpz_class rem = num - a * den;
    if (rem == 0) return Rational(approx);
    num = den;
    den = rem;
  }
  return Rational(target);
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<signed long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(BigInt(static_cast<signed long>(num)), BigInt(static_cast<signed long>(den))) {}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::kInvalidArgument, "zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(const BigInt& value) : value_(value) {}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Error {
    return Error(ErrorCode::kMalformedDocument,
                 "not a rational \"num/den\": '" + std::string(text) + "'");
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num_txt = body.substr(0, slash);
  std::string_view den_txt = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num_txt) || !all_digits(den_txt)) throw fail();
  BigInt num(std::string(num_txt), 10);
  BigInt den(std::string(den_txt), 10);
  if (den == 0) throw fail();
  if (negative) num = -num;
  return Rational(num, den);
}

Rational Rational::from_double(double value) {
  mpq_class q(value);
  return Rational(q);
}

std::string Rational::str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  if (digits < 1) digits = 1;
  mpf_class f(value_, static_cast<mp_bitcnt_t>(digits) * 4 + 128);
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  int n = gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
  if (n >= static_cast<int>(buf.size())) {
    buf.resize(static_cast<std::size_t>(n) + 1);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", digits, f.get_mpf_t());
  }
  return std::string(buf.data());
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kInvalidArgument, "inverse of zero");
  return Rational(value_.get_den(), value_.get_num());
}

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

BigInt Rational::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return q;
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  value_ /= o.value_;
  return *this;
}
Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned exponent) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(n, d);
}

Rational lcm(const Rational& a, const Rational& b) {
  if (a.sign() <= 0 || b.sign() <= 0) {
    throw Error(ErrorCode::kNonPositive, "lcm requires positive arguments, got " + a.str() +
                                             " and " + b.str());
  }
  // a = p/q, b = r/s in lowest terms: lcm = lcm(p, r) / gcd(q, s)
  BigInt n, d;
  mpz_lcm(n.get_mpz_t(), a.raw().get_num_mpz_t(), b.raw().get_num_mpz_t());
  mpz_gcd(d.get_mpz_t(), a.raw().get_den_mpz_t(), b.raw().get_den_mpz_t());
  return Rational(n, d);
}

Rational gcd(const Rational& a, const Rational& b) {
  if (a.sign() <= 0 || b.sign() <= 0) {
    throw Error(ErrorCode::kNonPositive, "gcd requires positive arguments");
  }
  BigInt n, d;
  mpz_gcd(n.get_mpz_t(), a.raw().get_num_mpz_t(), b.raw().get_num_mpz_t());
  mpz_lcm(d.get_mpz_t(), a.raw().get_den_mpz_t(), b.raw().get_den_mpz_t());
  return Rational(n, d);
}

bool exact_sqrt(const Rational& r, Rational& out) {
  if (r.sign() < 0) return false;
  const BigInt& n = r.raw().get_num();
  const BigInt& d = r.raw().get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
    return false;
  }
  BigInt rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  out = Rational(rn, rd);
  return true;
}

double sqrt_approx(const Rational& r) {
  if (r.sign() < 0) throw Error(ErrorCode::kInvalidArgument, "sqrt of negative value");
  if (r.is_zero()) return 0.0;
  mpf_class f(r.raw(), 256);
  mpf_class s(0, 256);
  mpf_sqrt(s.get_mpf_t(), f.get_mpf_t());
  // mpf -> double truncates; settle on the double whose rounding interval
  // [y - ulp/2, y + ulp/2) contains the root, decided exactly.
  double y = s.get_d();
  for (int guard = 0; guard < 8; ++guard) {
    const mpq_class lo_mid = (mpq_class(std::nextafter(y, 0.0)) + mpq_class(y)) / 2;
    const mpq_class hi_mid = (mpq_class(y) + mpq_class(std::nextafter(y, HUGE_VAL))) / 2;
    if (lo_mid * lo_mid > r.raw()) {
      y = std::nextafter(y, 0.0);
    } else if (hi_mid * hi_mid <= r.raw()) {
      y = std::nextafter(y, HUGE_VAL);
    } else {
      break;
    }
  }
  return y;
}

Rational sqrt_rational(const Rational& r, double rel_tol) {
  Rational exact;
  if (exact_sqrt(r, exact)) return exact;
  if (r.sign() < 0) throw Error(ErrorCode::kInvalidArgument, "sqrt of negative value");
  mpf_class f(r.raw(), 512);
  mpf_class s(0, 512);
  mpf_sqrt(s.get_mpf_t(), f.get_mpf_t());
  mpq_class q(s);
  return best_convergent(q, rel_tol);
}

Rational rationalize(double value, double rel_tol) {
  return best_convergent(mpq_class(value), rel_tol);
}

}  // namespace jrp

std::size_t std::hash<jrp::Rational>::operator()(const jrp::Rational& r) const noexcept {
  const std::size_t a = mpz_get_ui(r.raw().get_num_mpz_t());
  const std::size_t b = mpz_get_ui(r.raw().get_den_mpz_t());
  return a * 1000003u ^ b ^ (r.sign() < 0 ? 0x9e3779b97f4a7c15ull : 0);
}
