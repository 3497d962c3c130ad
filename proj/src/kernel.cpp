#include "dsrace/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace dsrace {

mpz_class binomial(unsigned long a, unsigned long b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  mpz_class r = 1;
  for (unsigned long i = 1; i <= b; ++i) {
    r *= a - b + i;
    // r now holds C(a-b+i, i) * i, divisible exactly by i.
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), i);
  }
  return r;
}

namespace {

// Continued fraction for I_x(a,b), modified Lentz method. Valid (and fast)
// for x < (a+1)/(a+b+2); the caller applies the symmetry otherwise.
double beta_cont_frac(double a, double b, double x) {
  constexpr int kMaxIter = 4000;
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) return h;
  }
  throw std::runtime_error("reg_incomplete_beta: continued fraction did not converge");
}

}  // namespace

double reg_incomplete_beta(double x, double a, double b) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("reg_incomplete_beta: x must be in [0,1]");
  }
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("reg_incomplete_beta: a and b must be positive");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double ln_pre = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        a * std::log(x) + b * std::log1p(-x);
  const double pre = std::exp(ln_pre);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return pre * beta_cont_frac(a, b, x) / a;
  }
  return 1.0 - pre * beta_cont_frac(b, a, 1.0 - x) / b;
}

}  // namespace dsrace
