#pragma once

#include <vector>

#include "dsrace/rational.hpp"

namespace dsrace {

enum class TableKind {
  kSuccessProbability,
  kDurationNumerator,
};

/// A run of consecutive sequence values computed by a second-order linear
/// recurrence with polynomial coefficients. first_index is 0 for success
/// probabilities and 1 for duration numerators.
///
/// The recurrence admits a non-decaying homogeneous solution, so in double
/// arithmetic rounding noise injected early stops shrinking while the true
/// sequence keeps decaying: past some index a float table is noise. Float
/// tables therefore carry a per-entry relative drift bound (exact tables
/// have none; they are exact). Entries whose bound exceeds kDriftTolerance
/// are flagged rather than silently returned; stored values are clamped to
/// the sequence's valid range, the raw recurrence still propagates.
template <typename Scalar>
struct RecurrenceTable {
  static constexpr double kDriftTolerance = 1e-9;

  Scalar q;
  TableKind kind;
  long first_index;
  std::vector<Scalar> values;
  std::vector<double> drift_bound;  // empty in exact mode

  const Scalar& at(long n) const { return values.at(static_cast<size_t>(n - first_index)); }
  long last_index() const { return first_index + static_cast<long>(values.size()) - 1; }

  double drift_bound_at(long n) const {
    if (drift_bound.empty()) return 0.0;
    return drift_bound.at(static_cast<size_t>(n - first_index));
  }
  bool drift_flagged(long n) const { return drift_bound_at(n) > kDriftTolerance; }
  bool any_drift_flagged() const {
    for (double b : drift_bound) {
      if (b > kDriftTolerance) return true;
    }
    return false;
  }
};

/// R_0..R_max_n from the seeds R_0 = 1, R_1 = 2q and
///   R_n = -(4nq^2-4qn-6q^2-n+6q+1) R_{n-1}/(n-1) + 2q(q-1)(2n-3) R_{n-2}/(n-1).
/// In exact mode every entry equals the closed-form sum bit for bit.
/// Requires 0 < q < 1/2 and max_n >= 1.
RecurrenceTable<Rational> success_probability_table(const Rational& q, long max_n);
RecurrenceTable<double> success_probability_table(double q, long max_n);

/// A_1..A_max_n from the seeds A_1 = q/(1-2q), A_2 = 2q^2(2-q)/(1-2q) and
///   A_n = -(4nq^2-4qn-6q^2-n+6q) A_{n-1}/(n-1) + 2q(q-1)(2n-3) A_{n-2}/(n-2).
/// Note the (n-1) / (n-2) denominator split; both seeds are given, so the
/// denominators never vanish. Requires 0 < q < 1/2 and max_n >= 2.
RecurrenceTable<Rational> duration_numerator_table(const Rational& q, long max_n);
RecurrenceTable<double> duration_numerator_table(double q, long max_n);

/// Conditional expected durations E_n = A_n / R_n for n = 0..max_n
/// (entry 0 is 0: an immediate win has an empty Phase II).
std::vector<Rational> expectation_table(const Rational& q, long max_n);
std::vector<double> expectation_table(double q, long max_n);

}  // namespace dsrace
