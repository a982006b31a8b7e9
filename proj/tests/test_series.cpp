#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "basel/quadrature.hpp"
#include "basel/series.hpp"
#include "basel/summation.hpp"

using namespace basel::series;
using std::numbers::pi;

TEST_CASE("sum examples") {
  const SeriesResult odd2 = sum_series({Family::OddPower, 2}, 1e-12);
  CHECK(std::abs(odd2.value - 1.2337005501361698) <= 1e-12);
  CHECK(odd2.tail_bound <= 1e-12);
  CHECK(odd2.terms_used < 10'000);

  // Dirichlet beta(3) = pi^3/32.
  const SeriesResult alt3 = sum_series({Family::AlternatingOddPower, 3}, 1e-12);
  CHECK(std::abs(alt3.value - 0.96894614625936940) <= 1e-12);
  CHECK(alt3.tail_bound <= 1e-12);

  // Dirichlet lambda(4) = pi^4/96.
  const SeriesResult odd4 = sum_series({Family::OddPower, 4}, 1e-12);
  CHECK(std::abs(odd4.value - 1.0146780316041921) <= 1e-12);
}

TEST_CASE("tail honesty") {
  for (const double tol : {1e-6, 1e-8, 1e-10}) {
    const SeriesResult loose = sum_series({Family::OddPower, 2}, tol);
    const SeriesResult tight = sum_series({Family::OddPower, 2}, tol / 100);
    CHECK(std::abs(loose.value - tight.value) <= loose.tail_bound);
    CHECK(std::abs(loose.value - pi * pi / 8) <= loose.tail_bound + 1e-15);
  }
}

TEST_CASE("alternating partial sums bracket the value") {
  const double value = sum_series({Family::AlternatingOddPower, 3}, 1e-14).value;
  basel::CompensatedSum<double> partial;
  long k = 0;
  for (const long n : {1L, 2L, 5L, 10L, 101L}) {
    for (; k < n; ++k) {
      const double t = 1.0 / std::pow(2.0 * static_cast<double>(k) + 1.0, 3);
      partial += (k % 2 == 0) ? t : -t;
    }
    // n terms: an odd count ends on a positive term and overshoots.
    if (n % 2 == 1) {
      CHECK(partial.value() > value);
    } else {
      CHECK(partial.value() < value);
    }
  }
}

TEST_CASE("zeta(2) from the odd sum") {
  CHECK(std::abs(zeta2_from_odd(pi * pi / 8) - 1.6449340668482264) <= 1e-15);
  CHECK(zeta2_from_odd(0.75) == 1.0);
  CHECK(std::abs(zeta2_from_odd(1.23370055014) - 1.64493406685) <= 1e-11);
  CHECK_THROWS_AS(zeta2_from_odd(0.0), std::invalid_argument);
  CHECK_THROWS_AS(zeta2_from_odd(-1.0), std::invalid_argument);

  // Against a direct sum of 1/n^2 to 10^6 with the integral tail 1/N.
  basel::CompensatedSum<double> direct;
  constexpr long kN = 1'000'000;
  for (long n = kN; n >= 1; --n) direct += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  direct += 1.0 / static_cast<double>(kN);
  const double corollary = zeta2_from_odd(sum_series({Family::OddPower, 2}, 1e-12).value);
  CHECK(std::abs(corollary - direct.value()) <= 1e-6);
}

TEST_CASE("moment examples") {
  CHECK(moment_integral(0, 1) == -1.0);
  CHECK(std::abs(moment_integral(1, 1) - (-1.0 / 9.0)) <= 1e-16);
  CHECK(moment_integral(0, 3) == -6.0);
  CHECK(moment_integral(0, 2) == 2.0);
  CHECK_THROWS_AS(moment_integral(0, 0), UnsupportedPower);
  CHECK_THROWS_AS(moment_integral(0, 4), UnsupportedPower);
  CHECK_THROWS_AS(moment_integral(-1, 1), std::invalid_argument);
}

TEST_CASE("moments agree with quadrature") {
  for (int k = 0; k <= 10; ++k) {
    for (int p = 1; p <= 3; ++p) {
      const auto q = basel::quad::integrate_finite(
          [&](double y) { return std::pow(y, 2 * k) * std::pow(std::log(y), p); }, 0.0, 1.0);
      CAPTURE(k);
      CAPTURE(p);
      CHECK(q.converged);
      CHECK(std::abs(q.value - moment_integral(k, p)) <= 1e-10);
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(sum_series({Family::OddPower, 1}, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(sum_series({Family::AlternatingOddPower, 0}, 1e-6), std::invalid_argument);
  CHECK_THROWS_AS(sum_series({Family::OddPower, 2}, 0.0), std::invalid_argument);
  // A first-omitted-term bound of 1e-20 on beta(2) needs ~5e9 terms.
  CHECK_THROWS_AS(sum_series({Family::AlternatingOddPower, 2}, 1e-20), ToleranceUnreachable);
  CHECK_THROWS_AS(sum_series({Family::AlternatingOddPower, 2}, 1e-6, 100), ToleranceUnreachable);
}
