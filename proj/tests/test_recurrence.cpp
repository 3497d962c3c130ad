#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "dsrace/attack_model.hpp"
#include "dsrace/recurrence.hpp"

using namespace dsrace;

TEST_CASE("success probability table seeds and early entries") {
  std::mt19937_64 gen(91);
  std::uniform_int_distribution<long> den(5, 100000);
  for (int i = 0; i < 10; ++i) {
    const long d = den(gen);
    const Rational q(1 + static_cast<long>(gen() % static_cast<unsigned long>(d / 2 - 1)), d);
    const auto t = success_probability_table(q, 3);
    CHECK(t.at(0) == Rational(1));
    CHECK(t.at(1) == Rational(2) * q);
  }
  const auto t = success_probability_table(Rational(1, 10), 2);
  CHECK(t.at(2) == Rational(7, 125));  // 6q^2 - 4q^3 at q = 1/10
  CHECK(t.kind == TableKind::kSuccessProbability);
  CHECK(t.first_index == 0);
  CHECK(t.last_index() == 2);
}

TEST_CASE("recurrence equals the closed-form sums, identically reduced") {
  const Rational qs[] = {Rational(1, 10), Rational(1, 4), Rational(1, 3), Rational(49, 100)};
  for (const Rational& q : qs) {
    const auto rt = success_probability_table(q, 60);
    const auto at = duration_numerator_table(q, 60);
    for (long n = 0; n <= 60; ++n) {
      CHECK(rt.at(n) == success_probability(q, n));
    }
    for (long n = 1; n <= 60; ++n) {
      CHECK(at.at(n) == duration_numerator(q, n));
    }
  }
  // spot checks further out
  CHECK(success_probability_table(Rational(1, 4), 50).at(50) ==
        success_probability(Rational(1, 4), 50));
  CHECK(duration_numerator_table(Rational(1, 3), 40).at(40) ==
        duration_numerator(Rational(1, 3), 40));
}

TEST_CASE("duration numerator table seeds and the n = 3 value") {
  const Rational q(1, 10);
  const auto t = duration_numerator_table(q, 3);
  CHECK(t.at(1) == q / (Rational(1) - Rational(2) * q));
  CHECK(t.at(2) == Rational(2) * q * q * (Rational(2) - q) / (Rational(1) - Rational(2) * q));
  CHECK(t.at(3) == Rational(663, 40000));  // 0.016575
  CHECK(t.first_index == 1);

  // float route: coefficients at n = 3, q = 0.1 are 1.77 and -0.54
  const auto tf = duration_numerator_table(0.1, 3);
  CHECK(tf.at(3) == doctest::Approx(1.77 * 0.0475 - 0.54 * 0.125).epsilon(1e-13));
  CHECK(tf.at(3) == doctest::Approx(0.016575).epsilon(1e-13));
}

TEST_CASE("expectation table") {
  const auto e = expectation_table(Rational(1, 10), 3);
  CHECK(e[0] == Rational(0));
  CHECK(e[1] == Rational(5, 8));  // 1/(2(1-2q)) at q = 1/10
  CHECK(e[2] == duration_numerator(Rational(1, 10), 2) / success_probability(Rational(1, 10), 2));

  // exact mode reaches the large-n limit (1-q)/(1-2q)^2 = 1.40625
  const auto e500 = expectation_table(Rational(1, 10), 500);
  CHECK(std::fabs(e500[500].to_double() - 1.40625) < 0.01);

  // float mode, inside the drift-clean region
  const auto ef = expectation_table(1.0 / 3.0, 60);
  const auto exact = expectation_table(Rational::from_double(1.0 / 3.0), 60);
  CHECK(ef[0] == 0.0);
  CHECK(std::fabs(ef[60] - exact[60].to_double()) / exact[60].to_double() <= 1e-9);

  const auto e1 = expectation_table(Rational(1, 10), 1);
  CHECK(e1.size() == 2);
  CHECK(e1[1] == Rational(5, 8));
}

TEST_CASE("float tables match the exact image to 1e-9 wherever unflagged") {
  // The forward recurrence has a non-decaying homogeneous solution, so float
  // entries rot once the true values decay to the rounding floor; the table
  // must flag those entries instead of silently returning them.
  const double qs[] = {0.1, 0.25, 1.0 / 3.0, 0.49};
  for (double q : qs) {
    const Rational qe = Rational::from_double(q);
    const auto exact_r = success_probability_table(qe, 200);
    const auto float_r = success_probability_table(q, 200);
    const auto exact_a = duration_numerator_table(qe, 200);
    const auto float_a = duration_numerator_table(q, 200);
    for (long n = 0; n <= 200; ++n) {
      const double er = exact_r.at(n).to_double();
      const double drift_r = std::fabs(float_r.at(n) - er) / er;
      // entries that drifted past tolerance must carry the flag
      if (drift_r > 1e-9) CHECK(float_r.drift_flagged(n));
      if (!float_r.drift_flagged(n)) CHECK(drift_r <= 1e-9);
      // in the clean region the tracked bound dominates the real drift
      if (float_r.drift_bound_at(n) <= 1e-3) CHECK(drift_r <= float_r.drift_bound_at(n));
      if (n >= 1) {
        const double ea = exact_a.at(n).to_double();
        const double drift_a = std::fabs(float_a.at(n) - ea) / ea;
        if (drift_a > 1e-9) CHECK(float_a.drift_flagged(n));
        if (!float_a.drift_flagged(n)) CHECK(drift_a <= 1e-9);
        if (float_a.drift_bound_at(n) <= 1e-3) CHECK(drift_a <= float_a.drift_bound_at(n));
      }
    }
  }
}

TEST_CASE("drift flag fires exactly where it should") {
  // q = 0.49: R_200 is still O(1), the whole table is clean
  const auto steep = success_probability_table(0.49, 200);
  CHECK_FALSE(steep.any_drift_flagged());
  // q = 0.1: R_n sinks to the rounding floor around n = 40; far entries are
  // noise and must be flagged
  const auto shallow = success_probability_table(0.1, 200);
  CHECK(shallow.any_drift_flagged());
  CHECK_FALSE(shallow.drift_flagged(5));
  CHECK(shallow.drift_flagged(200));
  // exact tables never drift
  const auto exact = success_probability_table(Rational(1, 10), 50);
  CHECK_FALSE(exact.any_drift_flagged());
  CHECK(exact.drift_bound_at(50) == 0.0);
}

TEST_CASE("table values stay in range") {
  const auto rt = success_probability_table(0.1, 10000);
  for (long n = 0; n <= 10000; ++n) {
    CHECK(rt.at(n) >= 0.0);
    CHECK(rt.at(n) <= 1.0);
  }
  const auto at = duration_numerator_table(0.25, 500);
  for (long n = 1; n <= 500; ++n) CHECK(at.at(n) >= 0.0);
}

TEST_CASE("a 10000-entry float table builds fast") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto t = success_probability_table(0.1, 10000);
  const auto t1 = std::chrono::steady_clock::now();
  CHECK(t.values.size() == 10001);
  CHECK(std::chrono::duration<double>(t1 - t0).count() < 1.0);
}

TEST_CASE("table domain errors") {
  CHECK_THROWS_AS(success_probability_table(Rational(1, 2), 10), std::domain_error);
  CHECK_THROWS_AS(success_probability_table(0.5, 10), std::domain_error);
  CHECK_THROWS_AS(success_probability_table(0.1, 0), std::domain_error);
  CHECK_THROWS_AS(duration_numerator_table(0.1, 1), std::domain_error);
  CHECK_THROWS_AS(duration_numerator_table(Rational(0), 5), std::domain_error);
}
