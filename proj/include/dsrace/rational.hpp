#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dsrace {

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator. Thin value wrapper over GMP's mpq_class; canonical form is
/// established at construction and preserved by every operator.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT: implicit by design
  Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}
  explicit Rational(const mpz_class& n) : v_(n) {}
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    mpq_canonicalize(v_.get_mpq_t());
  }

  /// Parses "a/b" or a plain integer "a". Base-10 only, no decimals.
  static Rational from_string(std::string_view text) {
    std::string s(text);
    mpq_class v;
    if (v.set_str(s, 10) != 0) {
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
    if (v.get_den() == 0) {
      throw std::domain_error("Rational: zero denominator in '" + s + "'");
    }
    mpq_canonicalize(v.get_mpq_t());
    Rational r;
    r.v_ = std::move(v);
    return r;
  }

  /// Exact binary value of a finite double.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rational: non-finite double");
    Rational r;
    r.v_ = mpq_class(x);
    return r;
  }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return v_ == 0; }

  /// "a/b" in lowest terms, or just "a" when the denominator is 1.
  std::string str() const { return v_.get_str(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.v_ = -a.v_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend Rational abs(const Rational& a) {
    Rational r;
    r.v_ = abs(a.v_);
    return r;
  }

  /// base^e by exponentiating numerator and denominator (stays reduced).
  friend Rational pow(const Rational& base, unsigned long e) {
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.v_.get_num().get_mpz_t(), e);
    mpz_pow_ui(d.get_mpz_t(), base.v_.get_den().get_mpz_t(), e);
    Rational r;
    r.v_ = mpq_class(n, d);  // already canonical: gcd(a,b)=1 implies gcd(a^e,b^e)=1
    return r;
  }

 private:
  mpq_class v_;
};

template <typename Stream>
Stream& operator<<(Stream& os, const Rational& r) {
  os << r.str();
  return os;
}

}  // namespace dsrace
