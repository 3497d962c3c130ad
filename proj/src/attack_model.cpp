#include "dsrace/attack_model.hpp"

#include <cmath>
#include <stdexcept>

#include "dsrace/kernel.hpp"

namespace dsrace {

namespace {

const Rational kHalf(1, 2);

void check_q_closed(const Rational& q) {  // 0 <= q < 1/2
  if (q < Rational(0) || q >= kHalf) {
    throw std::domain_error("q must satisfy 0 <= q < 1/2");
  }
}

void check_q_open(const Rational& q) {  // 0 < q < 1/2
  if (q <= Rational(0) || q >= kHalf) {
    throw std::domain_error("q must satisfy 0 < q < 1/2");
  }
}

void check_q_closed(double q) {
  if (!(q >= 0.0 && q < 0.5)) {
    throw std::domain_error("q must satisfy 0 <= q < 1/2");
  }
}

void check_q_open(double q) {
  if (!(q > 0.0 && q < 0.5)) {
    throw std::domain_error("q must satisfy 0 < q < 1/2");
  }
}

void check_n(long n) {
  if (n < 0) throw std::domain_error("n must be >= 0");
}

}  // namespace

DurationStats ExactDurationStats::to_double() const {
  const double var = variance.to_double();
  return {expectation.to_double(), second_moment.to_double(), var, std::sqrt(var)};
}

Rational negbin_pmf(const Rational& q, long n, long m) {
  check_q_closed(q);
  if (n < 1) throw std::domain_error("negbin_pmf: n must be >= 1 (Phase I is empty for n = 0)");
  if (m < 0) throw std::domain_error("negbin_pmf: m must be >= 0");
  return Rational(binomial(n + m - 1, m)) * pow(Rational(1) - q, n) * pow(q, m);
}

double negbin_pmf(double q, long n, long m) {
  check_q_closed(q);
  if (n < 1) throw std::domain_error("negbin_pmf: n must be >= 1 (Phase I is empty for n = 0)");
  if (m < 0) throw std::domain_error("negbin_pmf: m must be >= 0");
  ScaledReal v = ScaledReal::pow(1.0 - q, n);
  v *= ScaledReal::pow(q, m);
  // C(n+m-1, m) by the running product, scaled.
  for (long i = 1; i <= m; ++i) v *= static_cast<double>(n + i - 1) / static_cast<double>(i);
  return v.to_double();
}

Rational catchup_probability(const Rational& q, long deficit) {
  check_q_open(q);
  if (deficit < 1) throw std::domain_error("catchup_probability: deficit must be >= 1");
  return pow(q / (Rational(1) - q), deficit);
}

double catchup_probability(double q, long deficit) {
  check_q_open(q);
  if (deficit < 1) throw std::domain_error("catchup_probability: deficit must be >= 1");
  return std::pow(q / (1.0 - q), static_cast<double>(deficit));
}

namespace {

// Steps C(n+m-1,m) x^m b^(n-1-m) to its m+1 counterpart; both divisions are
// exact (the target is again an integer of that shape).
void step_term(mpz_class& term, long n, long m, const mpz_class& x, const mpz_class& b) {
  term *= n + m;
  term *= x;
  mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(m + 1));
  mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), b.get_mpz_t());
}

mpz_class int_pow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

}  // namespace

// The exact sums accumulate integer numerators over the common denominator
// b^(n-1) (writing q = a/b), with a single reduction at the end; term-by-term
// rational arithmetic spends most of its time in gcds.
Rational success_probability(const Rational& q, long n) {
  check_q_closed(q);
  check_n(n);
  if (n == 0) return Rational(1);
  const mpz_class a = q.numerator();
  const mpz_class b = q.denominator();
  const mpz_class c = b - a;  // numerator of 1-q

  const mpz_class b_pow = int_pow(b, static_cast<unsigned long>(n - 1));
  mpz_class t1 = b_pow;  // C(n+m-1,m) a^m b^(n-1-m)
  mpz_class t2 = b_pow;  // C(n+m-1,m) c^m b^(n-1-m)
  mpz_class s1 = 0, s2 = 0;
  for (long m = 0; m < n; ++m) {
    s1 += t1;
    s2 += t2;
    if (m + 1 < n) {
      step_term(t1, n, m, a, b);
      step_term(t2, n, m, c, b);
    }
  }
  // R = 1 - (1-q)^n S1 + q^n S2 over the common denominator b^(2n-1)
  const mpz_class num = int_pow(b, static_cast<unsigned long>(2 * n - 1)) -
                        int_pow(c, static_cast<unsigned long>(n)) * s1 +
                        int_pow(a, static_cast<unsigned long>(n)) * s2;
  return Rational(num, int_pow(b, static_cast<unsigned long>(2 * n - 1)));
}

double success_probability(double q, long n) {
  check_q_closed(q);
  check_n(n);
  if (n == 0) return 1.0;
  if (q == 0.0) return 0.0;
  const double p = 1.0 - q;

  // Catch-up piece: q^n * sum_{m<n} C(n+m-1,m) p^m.
  ScaledReal term(1.0);
  ScaledReal catch_sum;
  for (long m = 0; m < n; ++m) {
    catch_sum += term;
    term *= p * static_cast<double>(n + m) / static_cast<double>(m + 1);
  }
  ScaledReal total = ScaledReal::pow(q, n);
  total *= catch_sum;

  // Immediate-win piece: the negative binomial tail sum_{m>=n} C(n+m-1,m) p^n q^m.
  // Successive term ratios q(n+m)/(m+1) decrease toward q, so once the
  // geometric bound on the remainder falls below 1e-18 of the accumulated
  // value the tail is settled.
  ScaledReal u = ScaledReal::pow(p, n);
  for (long m = 0; m < n; ++m) u *= q * static_cast<double>(n + m) / static_cast<double>(m + 1);
  long m = n;
  while (true) {
    total += u;
    u *= q * static_cast<double>(n + m) / static_cast<double>(m + 1);
    ++m;
    const double r = q * static_cast<double>(n + m) / static_cast<double>(m + 1);
    const double remainder_bound = ScaledReal::ratio(u, total) / (1.0 - r);
    if (!(remainder_bound >= 1e-18)) break;
  }
  total += u;

  const double v = total.to_double();
  return v > 1.0 ? 1.0 : v;
}

double success_probability_beta(double q, long n) {
  check_q_open(q);
  if (n < 1) throw std::domain_error("success_probability_beta: n must be >= 1");
  const double s = 4.0 * q * (1.0 - q);
  return reg_incomplete_beta(s, static_cast<double>(n), 0.5);
}

Rational duration_numerator(const Rational& q, long n) {
  check_q_open(q);
  if (n < 1) throw std::domain_error("duration_numerator: n must be >= 1");
  const mpz_class a = q.numerator();
  const mpz_class b = q.denominator();
  const mpz_class c = b - a;

  mpz_class term = int_pow(b, static_cast<unsigned long>(n - 1));
  mpz_class sum = 0;
  for (long m = 0; m < n; ++m) {
    sum += term * (n - m);
    if (m + 1 < n) step_term(term, n, m, c, b);
  }
  // A = q^n/(1-2q) * S with 1-2q = (b-2a)/b
  return Rational(int_pow(a, static_cast<unsigned long>(n)) * sum,
                  int_pow(b, static_cast<unsigned long>(2 * n - 2)) * (b - 2 * a));
}

double duration_numerator(double q, long n) {
  check_q_open(q);
  if (n < 1) throw std::domain_error("duration_numerator: n must be >= 1");
  const double p = 1.0 - q;
  ScaledReal base(1.0);  // C(n+m-1,m) p^m
  ScaledReal sum;
  for (long m = 0; m < n; ++m) {
    ScaledReal t = base;
    t *= static_cast<double>(n - m);
    sum += t;
    base *= p * static_cast<double>(n + m) / static_cast<double>(m + 1);
  }
  ScaledReal r = ScaledReal::pow(q, n);
  r *= sum;
  return r.to_double() / (1.0 - 2.0 * q);
}

Rational second_moment_numerator(const Rational& q, long n) {
  check_q_open(q);
  if (n < 1) throw std::domain_error("second_moment_numerator: n must be >= 1");
  const mpz_class a = q.numerator();
  const mpz_class b = q.denominator();
  const mpz_class c = b - a;
  const mpz_class d = b - 2 * a;  // numerator of 1-2q

  // per-deficit weight L*4q(1-q)/(1-2q)^3 + L^2/(1-2q)^2
  //   = [ L*4acb + L^2 b^2 d ] / d^3
  const mpz_class var_part = 4 * a * c * b;
  const mpz_class mean_part = b * b * d;

  mpz_class term = int_pow(b, static_cast<unsigned long>(n - 1));
  mpz_class sum = 0;
  for (long m = 0; m < n; ++m) {
    const long deficit = n - m;
    sum += term * (var_part * deficit + mean_part * deficit * deficit);
    if (m + 1 < n) step_term(term, n, m, c, b);
  }
  return Rational(int_pow(a, static_cast<unsigned long>(n)) * sum,
                  int_pow(b, static_cast<unsigned long>(2 * n - 1)) * d * d * d);
}

double second_moment_numerator(double q, long n) {
  check_q_open(q);
  if (n < 1) throw std::domain_error("second_moment_numerator: n must be >= 1");
  const double p = 1.0 - q;
  const double one_minus_2q = 1.0 - 2.0 * q;
  const double step_mean_sq = 1.0 / (one_minus_2q * one_minus_2q);
  const double step_var = 4.0 * q * p / (one_minus_2q * one_minus_2q * one_minus_2q);
  ScaledReal base(1.0);
  ScaledReal sum;
  for (long m = 0; m < n; ++m) {
    const double deficit = static_cast<double>(n - m);
    ScaledReal t = base;
    t *= deficit * step_var + deficit * deficit * step_mean_sq;
    sum += t;
    base *= p * static_cast<double>(n + m) / static_cast<double>(m + 1);
  }
  ScaledReal r = ScaledReal::pow(q, n);
  r *= sum;
  return r.to_double();
}

ExactDurationStats duration_stats(const Rational& q, long n) {
  check_q_closed(q);
  check_n(n);
  if (n == 0) return {};
  if (q.is_zero()) {
    throw std::domain_error("duration_stats: q = 0 conditions on a probability-zero event");
  }
  const Rational r = success_probability(q, n);
  const Rational expectation = duration_numerator(q, n) / r;
  const Rational second = second_moment_numerator(q, n) / r;
  return {expectation, second, second - expectation * expectation};
}

DurationStats duration_stats(double q, long n) {
  check_q_closed(q);
  check_n(n);
  if (n == 0) return {};
  if (q == 0.0) {
    throw std::domain_error("duration_stats: q = 0 conditions on a probability-zero event");
  }
  const double r = success_probability(q, n);
  const double expectation = duration_numerator(q, n) / r;
  const double second = second_moment_numerator(q, n) / r;
  const double variance = second - expectation * expectation;
  return {expectation, second, variance, std::sqrt(variance)};
}

namespace {

// Hard stop for the confirmation scan; q close to 1/2 with a tiny risk target
// can demand astronomically many confirmations.
constexpr long kMaxConfirmationScan = 1000000;

}  // namespace

long min_confirmations(const Rational& q, const Rational& risk) {
  check_q_open(q);
  if (risk <= Rational(0) || risk >= Rational(1)) {
    throw std::domain_error("risk must satisfy 0 < risk < 1");
  }
  // Rolling second-order recurrence; entries equal the closed-form sums.
  Rational prev(1);            // R_0
  Rational cur = Rational(2) * q;  // R_1
  if (cur <= risk) return 1;
  for (long n = 2; n <= kMaxConfirmationScan; ++n) {
    const Rational c1 =
        -(Rational(4 * n) * q * q - Rational(4 * n) * q - Rational(6) * q * q -
          Rational(n) + Rational(6) * q + Rational(1)) /
        Rational(n - 1);
    const Rational c2 =
        Rational(2) * q * (q - Rational(1)) * Rational(2 * n - 3) / Rational(n - 1);
    Rational next = c1 * cur + c2 * prev;
    prev = cur;
    cur = next;
    if (cur <= risk) return n;
  }
  throw std::runtime_error("min_confirmations: risk target needs more than 10^6 confirmations");
}

long min_confirmations(double q, double risk) {
  check_q_open(q);
  if (!(risk > 0.0 && risk < 1.0)) {
    throw std::domain_error("risk must satisfy 0 < risk < 1");
  }
  // R_n is strictly decreasing in n, so gallop to a bracket and bisect. The
  // stable sum is drift-free at any n (the float recurrence is not).
  long lo = 0;  // R_lo > risk
  long hi = 1;
  while (success_probability(q, hi) > risk) {
    lo = hi;
    hi *= 2;
    if (hi > kMaxConfirmationScan) {
      throw std::runtime_error(
          "min_confirmations: risk target needs more than 10^6 confirmations");
    }
  }
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (success_probability(q, mid) > risk) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace dsrace
