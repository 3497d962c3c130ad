#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace dsrace {

/// Binomial coefficient C(a, b) via the multiplicative formula with exact
/// division at each step (intermediates never exceed the final size).
/// Returns 0 when b > a.
mpz_class binomial(unsigned long a, unsigned long b);

/// Regularized incomplete beta function I_x(a, b) for 0 <= x <= 1, a, b > 0.
/// Continued-fraction evaluation (modified Lentz); the symmetry
/// I_x(a,b) = 1 - I_{1-x}(b,a) is applied when x > (a+1)/(a+b+2) so the
/// fraction always converges rapidly. Relative accuracy is at the 1e-13
/// level over the domain exercised here.
double reg_incomplete_beta(double x, double a, double b);

/// Neumaier-compensated accumulator: summation error is independent of the
/// number of terms. Overflow to infinity is latched and reported rather
/// than poisoning the compensation with NaNs.
class StableSum {
 public:
  void add(double x) {
    if (overflowed_) {
      sum_ += x;
      return;
    }
    const double t = sum_ + x;
    if (std::isinf(t)) {
      sum_ = t;
      comp_ = 0.0;
      overflowed_ = true;
      return;
    }
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return overflowed_ ? sum_ : sum_ + comp_; }
  bool overflowed() const { return overflowed_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  bool overflowed_ = false;
};

struct SumResult {
  double value;
  bool overflow;
};

inline SumResult stable_sum(std::span<const double> terms) {
  StableSum acc;
  for (double t : terms) acc.add(t);
  return {acc.value(), acc.overflowed()};
}

/// Nonnegative real carried as f * 2^e with f in [0.5, 1) (or exactly 0).
/// Lets the binomial-sum evaluators multiply factors like C(2n,n) and q^n
/// whose product is representable even though neither factor is.
class ScaledReal {
 public:
  ScaledReal() = default;
  explicit ScaledReal(double x) : f_(x) { normalize(); }

  static ScaledReal pow(double base, long exp) {
    ScaledReal r(1.0);
    ScaledReal b(base);
    while (exp > 0) {
      if (exp & 1) r *= b;
      b *= b;
      exp >>= 1;
    }
    return r;
  }

  ScaledReal& operator*=(double m) {
    f_ *= m;
    normalize();
    return *this;
  }

  ScaledReal& operator*=(const ScaledReal& o) {
    f_ *= o.f_;
    e_ += o.e_;
    normalize();
    return *this;
  }

  ScaledReal& operator+=(const ScaledReal& o) {
    if (o.f_ == 0.0) return *this;
    if (f_ == 0.0) {
      *this = o;
      return *this;
    }
    long d = o.e_ - e_;
    if (d >= 0) {
      f_ = o.f_ + std::ldexp(f_, d > 1100 ? -1100 : static_cast<int>(-d));
      e_ = o.e_;
    } else {
      f_ = f_ + std::ldexp(o.f_, d < -1100 ? -1100 : static_cast<int>(d));
    }
    normalize();
    return *this;
  }

  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { a *= b; return a; }
  friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) { a += b; return a; }

  bool is_zero() const { return f_ == 0.0; }

  /// May flush to 0 or infinity when the exponent is out of double range.
  double to_double() const {
    if (f_ == 0.0) return 0.0;
    if (e_ > 1100) return std::numeric_limits<double>::infinity();
    if (e_ < -1100) return 0.0;
    return std::ldexp(f_, static_cast<int>(e_));
  }

  /// a / b as a double; 0 or infinity when the exponents are far apart.
  static double ratio(const ScaledReal& a, const ScaledReal& b) {
    if (a.f_ == 0.0) return 0.0;
    if (b.f_ == 0.0) return std::numeric_limits<double>::infinity();
    long d = a.e_ - b.e_;
    if (d > 1060) return std::numeric_limits<double>::infinity();
    if (d < -1060) return 0.0;
    return std::ldexp(a.f_ / b.f_, static_cast<int>(d));
  }

 private:
  void normalize() {
    if (f_ == 0.0) {
      e_ = 0;
      return;
    }
    int k = 0;
    f_ = std::frexp(f_, &k);
    e_ += k;
  }

  double f_ = 0.0;
  long e_ = 0;
};

}  // namespace dsrace
