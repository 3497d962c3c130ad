#include "dsrace/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dsrace/attack_model.hpp"
#include "dsrace/recurrence.hpp"

namespace dsrace {

namespace {

// One series coefficient: scale_num/scale_den * [optional (q-1) factor] *
// poly(q) / (2q-1)^pole, with poly stored by ascending powers of q.
struct TermSpec {
  long scale_num;
  long scale_den;
  int pole;
  bool q_minus_one_factor;
  std::initializer_list<long> poly;
};

// Success probability, bracketed series: 1 + sum_k c_k / n^k.
constexpr TermSpec kProbTerm[4] = {
    {1, 8, 2, false, {-1, -12, 12}},
    {1, 128, 4, false, {1, 280, 120, -800, 400}},
    {5, 1024, 6, false, {1, -476, -3444, 6496, 112, -4032, 1344}},
    {21, 32768, 8, false, {-1, 3536, 92368, 18368, -514400, 549632, -88832, -80896, 20224}},
};

// Expected duration, bracketed series: 1 + sum_k d_k / n^k.
constexpr TermSpec kExpTerm[4] = {
    {-1, 1, 2, false, {1}},
    {-1, 1, 4, false, {-1, -6, 6}},
    {-1, 1, 6, false, {1, 24, 12, -72, 36}},
    {-1, 1, 8, false, {-1, -66, -306, 528, 276, -648, 216}},
};

// Variance: direct series v_0 + v_1/n + ... (no common prefactor).
constexpr TermSpec kVarTerm[5] = {
    {1, 1, 4, true, {-2, -3, 4}},
    {-1, 1, 6, true, {-7, 2, 4}},
    {-1, 1, 8, true, {18, 29, -58, -12, 24}},
    {-1, 1, 10, true, {-41, -312, 328, 444, -348, -216, 144}},
    {-1, 1, 12, true, {88, 1711, 1586, -9972, 4632, 4956, -1704, -2160, 864}},
};

template <typename S>
S eval_poly(std::initializer_list<long> coeffs, const S& q) {
  S acc(0);
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) {
    acc = acc * q + S(*it);
  }
  return acc;
}

template <typename S>
S pow_int(S base, int e) {
  S r(1);
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

template <typename S>
S eval_term(const TermSpec& t, const S& q) {
  S num = eval_poly(t.poly, q);
  if (t.q_minus_one_factor) num = num * (q - S(1));
  const S pole = pow_int(S(2) * q - S(1), t.pole);
  return S(t.scale_num) * num / (S(t.scale_den) * pole);
}

void check_inputs(double q, long n, int order) {
  if (!(q > 0.0 && q < 0.5)) throw std::domain_error("q must satisfy 0 < q < 1/2");
  if (n < 1) throw std::domain_error("n must be >= 1");
  if (order < 0 || order > 4) throw std::invalid_argument("order must be in 0..4");
}

AsymptoticEval assemble(double q, long n, int order, double prefactor,
                        const TermSpec* specs, bool direct_terms) {
  AsymptoticEval ev;
  ev.base = 4.0 * q * (1.0 - q);
  ev.prefactor = prefactor;
  ev.order = order;
  const double dn = static_cast<double>(n);
  double npow = 1.0;
  for (int k = 0; k <= order; ++k) {
    double ck;
    if (direct_terms) {
      ck = eval_term(specs[k], q);
    } else {
      ck = (k == 0) ? 1.0 : eval_term(specs[k - 1], q);
    }
    ev.terms.push_back(ck / npow);
    npow *= dn;
  }
  double sum = 0.0;
  for (double t : ev.terms) sum += t;
  ev.value = prefactor * sum;
  return ev;
}

}  // namespace

AsymptoticEval success_probability_asymptotic(double q, long n, int order) {
  check_inputs(q, n, order);
  const double s = 4.0 * q * (1.0 - q);
  const double pref = std::pow(s, static_cast<double>(n)) /
                      (std::sqrt(std::numbers::pi) * (1.0 - 2.0 * q) *
                       std::sqrt(static_cast<double>(n)));
  return assemble(q, n, order, pref, kProbTerm, false);
}

AsymptoticEval expectation_asymptotic(double q, long n, int order) {
  check_inputs(q, n, order);
  const double pref = (1.0 - q) / ((1.0 - 2.0 * q) * (1.0 - 2.0 * q));
  return assemble(q, n, order, pref, kExpTerm, false);
}

AsymptoticEval variance_asymptotic(double q, long n, int order) {
  check_inputs(q, n, order);
  return assemble(q, n, order, 1.0, kVarTerm, true);
}

Rational series_coefficient(Series series, const Rational& q, int k) {
  if (k < 0 || k > 4) throw std::invalid_argument("order must be in 0..4");
  switch (series) {
    case Series::kSuccessProbability:
      return k == 0 ? Rational(1) : eval_term(kProbTerm[k - 1], q);
    case Series::kExpectation:
      return k == 0 ? Rational(1) : eval_term(kExpTerm[k - 1], q);
    case Series::kVariance:
      return eval_term(kVarTerm[k], q);
  }
  throw std::invalid_argument("unknown series");
}

namespace {

std::vector<double> exact_reference(const Rational& q, Series series,
                                    std::span<const long> grid, long max_n) {
  std::vector<double> exact;
  exact.reserve(grid.size());
  switch (series) {
    case Series::kSuccessProbability: {
      const auto table = success_probability_table(q, max_n);
      for (long n : grid) exact.push_back(table.at(n).to_double());
      break;
    }
    case Series::kExpectation: {
      const auto r = success_probability_table(q, max_n);
      const auto a = duration_numerator_table(q, max_n);
      for (long n : grid) exact.push_back((a.at(n) / r.at(n)).to_double());
      break;
    }
    case Series::kVariance: {
      for (long n : grid) exact.push_back(duration_stats(q, n).variance.to_double());
      break;
    }
  }
  return exact;
}

}  // namespace

SlopeResult residual_slope(const Rational& q, Series series, int order,
                           std::span<const long> n_grid) {
  if (n_grid.size() < 4) {
    throw std::invalid_argument("residual_slope: need at least 4 grid points");
  }
  const long mn = *std::min_element(n_grid.begin(), n_grid.end());
  const long mx = *std::max_element(n_grid.begin(), n_grid.end());
  if (mn < 10) throw std::invalid_argument("residual_slope: all grid points must be >= 10");
  if (mx < 4 * mn) {
    throw std::invalid_argument("residual_slope: grid must span at least a factor of 4");
  }

  const std::vector<double> exact = exact_reference(q, series, n_grid, mx);
  const double qd = q.to_double();

  std::vector<double> lx, ly;
  for (size_t i = 0; i < n_grid.size(); ++i) {
    double approx;
    switch (series) {
      case Series::kSuccessProbability:
        approx = success_probability_asymptotic(qd, n_grid[i], order).value;
        break;
      case Series::kExpectation:
        approx = expectation_asymptotic(qd, n_grid[i], order).value;
        break;
      default:
        approx = variance_asymptotic(qd, n_grid[i], order).value;
        break;
    }
    const double resid = (approx - exact[i]) / exact[i];
    if (resid == 0.0) {
      return {std::numeric_limits<double>::quiet_NaN(), true};
    }
    lx.push_back(std::log(static_cast<double>(n_grid[i])));
    ly.push_back(std::log(std::fabs(resid)));
  }

  const size_t k = lx.size();
  double mx_ = 0.0, my_ = 0.0;
  for (size_t i = 0; i < k; ++i) {
    mx_ += lx[i];
    my_ += ly[i];
  }
  mx_ /= static_cast<double>(k);
  my_ /= static_cast<double>(k);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < k; ++i) {
    num += (lx[i] - mx_) * (ly[i] - my_);
    den += (lx[i] - mx_) * (lx[i] - mx_);
  }
  return {num / den, false};
}

SlopeResult residual_slope(double q, Series series, int order, std::span<const long> n_grid) {
  return residual_slope(Rational::from_double(q), series, order, n_grid);
}

}  // namespace dsrace
