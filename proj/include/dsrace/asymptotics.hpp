#pragma once

#include <span>
#include <vector>

#include "dsrace/rational.hpp"

namespace dsrace {

/// Truncated large-n expansion of one of the three families, with the
/// per-order contributions kept so the value can be recomputed from its
/// parts: value = prefactor * sum(terms), terms[k] = c_k(q) / n^k.
struct AsymptoticEval {
  double base = 0.0;       // s = 4q(1-q), the exponential decay rate
  double prefactor = 0.0;  // factor multiplying the bracketed series
  std::vector<double> terms;
  double value = 0.0;
  int order = 0;
};

enum class Series {
  kSuccessProbability,
  kExpectation,
  kVariance,
};

/// Success-probability expansion about n = infinity:
///   R_n(q) ~ s^n / (sqrt(pi) (1-2q) sqrt(n)) * (1 + c_1/n + ... + c_4/n^4),
/// truncated at the requested order (0..4). Requires 0 < q < 1/2, n >= 1.
AsymptoticEval success_probability_asymptotic(double q, long n, int order);

/// Conditional expected duration expansion; order 0 is the n->infinity limit
/// (1-q)/(1-2q)^2.
AsymptoticEval expectation_asymptotic(double q, long n, int order);

/// Conditional duration variance expansion; order 0 is the n->infinity limit
/// (1-q)(2+3q-4q^2)/(1-2q)^4 (prefactor is 1; terms are direct c_k/n^k).
AsymptoticEval variance_asymptotic(double q, long n, int order);

/// Exact-rational value of the order-k series coefficient c_k(q). The
/// coefficients are stored as integer polynomial / (2q-1)-power pairs, so two
/// representations of the same rational q yield the identical Rational.
/// k ranges over 0..4.
Rational series_coefficient(Series series, const Rational& q, int k);

struct SlopeResult {
  double slope = 0.0;
  bool degenerate = false;  // some residual underflowed to exactly zero
};

/// Empirical convergence rate of the order-k truncation: the least-squares
/// slope of log|relative residual| against log n, with the residual measured
/// against exact-arithmetic reference values. A clean order-k truncation has
/// slope near -(k+1). The grid needs at least 4 points, all n >= 10,
/// spanning at least a factor of 4.
SlopeResult residual_slope(const Rational& q, Series series, int order,
                           std::span<const long> n_grid);
SlopeResult residual_slope(double q, Series series, int order, std::span<const long> n_grid);

}  // namespace dsrace
