#include "dsrace/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsrace {

namespace {

template <typename S>
void check_q(const S& q) {
  if (!(q > S(0) && q < S(1) / S(2))) {
    throw std::domain_error("q must satisfy 0 < q < 1/2");
  }
}

template <typename S>
std::vector<S> build_success_values(const S& q, long max_n) {
  check_q(q);
  if (max_n < 1) throw std::domain_error("success_probability_table: max_n must be >= 1");
  std::vector<S> v;
  v.reserve(static_cast<size_t>(max_n) + 1);
  v.push_back(S(1));
  v.push_back(S(2) * q);
  for (long n = 2; n <= max_n; ++n) {
    const S c1 = -(S(4 * n) * q * q - S(4 * n) * q - S(6) * q * q - S(n) + S(6) * q + S(1)) /
                 S(n - 1);
    const S c2 = S(2) * q * (q - S(1)) * S(2 * n - 3) / S(n - 1);
    v.push_back(c1 * v[static_cast<size_t>(n - 1)] + c2 * v[static_cast<size_t>(n - 2)]);
  }
  v.resize(static_cast<size_t>(max_n) + 1);
  return v;
}

template <typename S>
std::vector<S> build_duration_values(const S& q, long max_n) {
  check_q(q);
  if (max_n < 2) throw std::domain_error("duration_numerator_table: max_n must be >= 2");
  const S one_minus_2q = S(1) - S(2) * q;
  std::vector<S> v;  // v[i] = A_{i+1}
  v.reserve(static_cast<size_t>(max_n));
  v.push_back(q / one_minus_2q);
  v.push_back(S(2) * q * q * (S(2) - q) / one_minus_2q);
  for (long n = 3; n <= max_n; ++n) {
    const S c1 = -(S(4 * n) * q * q - S(4 * n) * q - S(6) * q * q - S(n) + S(6) * q) / S(n - 1);
    const S c2 = S(2) * q * (q - S(1)) * S(2 * n - 3) / S(n - 2);
    v.push_back(c1 * v[static_cast<size_t>(n - 2)] + c2 * v[static_cast<size_t>(n - 3)]);
  }
  return v;
}

// Relative drift bound for the float recurrences. Rounding noise rides the
// recurrence's non-decaying homogeneous solution, so the absolute error
// after n steps is of order eps * (largest magnitude seen so far) * n; the
// per-entry relative bound divides by the entry itself. The constant is
// calibrated with margin against exact-arithmetic measurements.
struct DriftTracker {
  double running_max = 0.0;
  long steps = 0;

  double bound_for(double raw) {
    ++steps;
    running_max = std::max(running_max, std::fabs(raw));
    if (raw == 0.0 || !std::isfinite(raw)) return std::numeric_limits<double>::infinity();
    return 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(steps + 1) *
           (running_max / std::fabs(raw));
  }
};

}  // namespace

RecurrenceTable<Rational> success_probability_table(const Rational& q, long max_n) {
  return {q, TableKind::kSuccessProbability, 0, build_success_values(q, max_n), {}};
}

RecurrenceTable<double> success_probability_table(double q, long max_n) {
  std::vector<double> raw = build_success_values(q, max_n);
  RecurrenceTable<double> table{q, TableKind::kSuccessProbability, 0, {}, {}};
  DriftTracker tracker;
  table.values.reserve(raw.size());
  table.drift_bound.reserve(raw.size());
  for (double r : raw) {
    table.drift_bound.push_back(tracker.bound_for(r));
    table.values.push_back(std::clamp(r, 0.0, 1.0));
  }
  return table;
}

RecurrenceTable<Rational> duration_numerator_table(const Rational& q, long max_n) {
  return {q, TableKind::kDurationNumerator, 1, build_duration_values(q, max_n), {}};
}

RecurrenceTable<double> duration_numerator_table(double q, long max_n) {
  std::vector<double> raw = build_duration_values(q, max_n);
  RecurrenceTable<double> table{q, TableKind::kDurationNumerator, 1, {}, {}};
  DriftTracker tracker;
  table.values.reserve(raw.size());
  table.drift_bound.reserve(raw.size());
  for (double r : raw) {
    table.drift_bound.push_back(tracker.bound_for(r));
    table.values.push_back(std::max(r, 0.0));
  }
  return table;
}

std::vector<Rational> expectation_table(const Rational& q, long max_n) {
  if (max_n < 0) throw std::domain_error("expectation_table: max_n must be >= 0");
  std::vector<Rational> e;
  e.reserve(static_cast<size_t>(max_n) + 1);
  e.push_back(Rational(0));
  if (max_n == 0) {
    check_q(q);
    return e;
  }
  const auto r = build_success_values(q, max_n);
  if (max_n == 1) {
    e.push_back(q / (Rational(1) - Rational(2) * q) / r[1]);
    return e;
  }
  const auto a = build_duration_values(q, max_n);
  for (long n = 1; n <= max_n; ++n) {
    e.push_back(a[static_cast<size_t>(n - 1)] / r[static_cast<size_t>(n)]);
  }
  return e;
}

std::vector<double> expectation_table(double q, long max_n) {
  if (max_n < 0) throw std::domain_error("expectation_table: max_n must be >= 0");
  std::vector<double> e;
  e.reserve(static_cast<size_t>(max_n) + 1);
  e.push_back(0.0);
  if (max_n == 0) {
    check_q(q);
    return e;
  }
  const auto r = build_success_values(q, max_n);
  if (max_n == 1) {
    e.push_back(q / (1.0 - 2.0 * q) / r[1]);
    return e;
  }
  const auto a = build_duration_values(q, max_n);
  for (long n = 1; n <= max_n; ++n) {
    e.push_back(a[static_cast<size_t>(n - 1)] / r[static_cast<size_t>(n)]);
  }
  return e;
}

}  // namespace dsrace
