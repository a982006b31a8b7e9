#include "basel/series.hpp"

#include <cmath>

#include <fmt/core.h>

#include "basel/summation.hpp"

namespace basel::series {

namespace {

// Rising factorial s (s+1) ... (s+n-1).
double rising(int s, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= s + i;
  return r;
}

// |B_6 / 6! * f^(5)(N)| for f(k) = (2k+1)^-s, with m = 2N+1.
double euler_maclaurin_bound(int s, double m) {
  return 32.0 * rising(s, 5) / 30240.0 * std::pow(m, -(s + 5));
}

double odd_tail(int s, double m) {
  const double integral = std::pow(m, 1 - s) / (2.0 * (s - 1));
  const double half_term = 0.5 * std::pow(m, -s);
  const double first = s * std::pow(m, -s - 1) / 6.0;
  const double second = -rising(s, 3) * std::pow(m, -s - 3) / 90.0;
  return integral + half_term + first + second;
}

SeriesResult sum_odd_power(int s, double tol, long max_terms) {
  long n = 4;
  while (euler_maclaurin_bound(s, 2.0 * n + 1.0) > tol) {
    if (n > max_terms) {
      throw ToleranceUnreachable(fmt::format("sum of 1/(2k+1)^{} to {:g} needs more than {} terms", s, tol, max_terms));
    }
    n *= 2;
  }
  // Bisect down to the smallest admissible N.
  long lo = n / 2, hi = n;
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    if (euler_maclaurin_bound(s, 2.0 * mid + 1.0) > tol) lo = mid; else hi = mid;
  }
  n = std::max(hi, 4L);
  if (n > max_terms) {
    throw ToleranceUnreachable(fmt::format("sum of 1/(2k+1)^{} to {:g} needs {} terms (cap {})", s, tol, n, max_terms));
  }

  CompensatedSum<double> sum;
  for (long k = 0; k < n; ++k) sum += std::pow(2.0 * k + 1.0, -s);
  const double m = 2.0 * n + 1.0;
  sum += odd_tail(s, m);
  return {sum.value(), n, euler_maclaurin_bound(s, m)};
}

SeriesResult sum_alternating(int s, double tol, long max_terms) {
  // Smallest N with (2N+1)^-s <= tol.
  const double m_needed = std::pow(tol, -1.0 / s);
  if (!(m_needed < 2.0 * static_cast<double>(max_terms) + 1.0)) {
    throw ToleranceUnreachable(fmt::format("alternating sum 1/(2k+1)^{} to {:g} needs more than {} terms", s, tol, max_terms));
  }
  long n = std::max(0L, static_cast<long>(std::ceil((m_needed - 1.0) / 2.0)) - 1);
  while (std::pow(2.0 * n + 1.0, -s) > tol) ++n;
  if (n > max_terms) {
    throw ToleranceUnreachable(fmt::format("alternating sum 1/(2k+1)^{} to {:g} needs {} terms (cap {})", s, tol, n, max_terms));
  }

  CompensatedSum<double> sum;
  for (long k = 0; k < n; ++k) {
    const double term = std::pow(2.0 * k + 1.0, -s);
    sum += (k % 2 == 0) ? term : -term;
  }
  return {sum.value(), n, std::pow(2.0 * n + 1.0, -s)};
}

}  // namespace

void SeriesSpec::validate() const {
  if (exponent < 2) {
    throw std::invalid_argument(fmt::format("series exponent must be >= 2, got {}", exponent));
  }
}

SeriesResult sum_series(const SeriesSpec& spec, double tol, long max_terms) {
  spec.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("series tolerance must be positive");
  switch (spec.family) {
    case Family::OddPower:
      return sum_odd_power(spec.exponent, tol, max_terms);
    case Family::AlternatingOddPower:
      return sum_alternating(spec.exponent, tol, max_terms);
  }
  throw std::invalid_argument("unknown series family");
}

double zeta2_from_odd(double odd_sum) {
  if (!(odd_sum > 0.0)) throw std::invalid_argument("odd sum must be positive");
  return 4.0 * odd_sum / 3.0;
}

double moment_integral(int k, int p) {
  if (k < 0) throw std::invalid_argument(fmt::format("moment index k must be >= 0, got {}", k));
  if (p < 1 || p > 3) throw UnsupportedPower(fmt::format("moment power p must be 1, 2 or 3, got {}", p));
  const double factorial = p == 1 ? 1.0 : (p == 2 ? 2.0 : 6.0);
  const double sign = p % 2 == 0 ? 1.0 : -1.0;
  return sign * factorial / std::pow(2.0 * k + 1.0, p + 1);
}

}  // namespace basel::series
