#pragma once

#include "dsrace/rational.hpp"

namespace dsrace {

/// Conditional Phase-II duration statistics (given the attacker wins),
/// measured in steps = goals scored by either team.
struct DurationStats {
  double expectation = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  double std_dev = 0.0;
};

/// Exact-arithmetic counterpart; std_dev is irrational so it only exists on
/// the double view.
struct ExactDurationStats {
  Rational expectation;
  Rational second_moment;
  Rational variance;
  DurationStats to_double() const;
};

/// Probability that the attacker's Phase-I score is exactly m when the honest
/// chain needs n blocks: the negative binomial pmf C(n+m-1,m)(1-q)^n q^m.
/// Requires n >= 1.
Rational negbin_pmf(const Rational& q, long n, long m);
double negbin_pmf(double q, long n, long m);

/// Gambler's-ruin catch-up probability (q/(1-q))^deficit for a deficit >= 1.
Rational catchup_probability(const Rational& q, long deficit);
double catchup_probability(double q, long deficit);

/// Probability that the attacker ever ties an honest chain n confirmations
/// ahead (wins on a tie). Exact overload evaluates the closed-form binomial
/// sum verbatim in rational arithmetic. The double overload reorders it as
///   q^n * sum_{m<n} C(n+m-1,m)(1-q)^m  +  sum_{m>=n} negbin_pmf(m)
/// which involves only positive terms (the verbatim form cancels
/// catastrophically for small q and large n); the infinite tail is truncated
/// once its geometric bound drops below 1e-18 of the accumulated value.
/// Domain: 0 <= q < 1/2, n >= 0.
Rational success_probability(const Rational& q, long n);
double success_probability(double q, long n);

/// Same quantity through the regularized incomplete beta closed form
/// I_s(n, 1/2) with s = 4q(1-q). Requires 0 < q < 1/2, n >= 1.
double success_probability_beta(double q, long n);

/// Unnormalized conditional expected Phase-II duration:
///   A_n(q) = q^n/(1-2q) * sum_{m<n} C(n+m-1,m)(1-q)^m (n-m).
/// The conditional expectation is A_n(q) / R_n(q). Requires 0 < q < 1/2, n >= 1.
Rational duration_numerator(const Rational& q, long n);
double duration_numerator(double q, long n);

/// Unnormalized conditional second moment of the Phase-II duration. The
/// catch-up walk conditioned on success is the mirrored walk (step toward
/// the tie with probability 1-q), so the time to erase a deficit L is a sum
/// of L independent single-step passage times with mean 1/(1-2q) and
/// variance 4q(1-q)/(1-2q)^3, giving
///   M_n(q) = q^n * sum_{m<n} C(n+m-1,m)(1-q)^m
///            * [ (n-m) * 4q(1-q)/(1-2q)^3 + (n-m)^2 / (1-2q)^2 ].
/// Requires 0 < q < 1/2, n >= 1.
Rational second_moment_numerator(const Rational& q, long n);
double second_moment_numerator(double q, long n);

/// Conditional duration statistics: expectation A_n/R_n, second moment
/// M_n/R_n, variance = second moment - expectation^2. n = 0 yields all-zero
/// stats (the attacker wins immediately, Phase II is empty); q = 0 with
/// n >= 1 is rejected, as that conditions on a probability-zero event.
ExactDurationStats duration_stats(const Rational& q, long n);
DurationStats duration_stats(double q, long n);

/// Smallest n with success_probability(q, n) <= risk. Requires 0 < q < 1/2
/// and 0 < risk < 1.
long min_confirmations(const Rational& q, const Rational& risk);
long min_confirmations(double q, double risk);

}  // namespace dsrace
