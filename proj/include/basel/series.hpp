#pragma once

#include <stdexcept>

namespace basel::series {

enum class Family {
  OddPower,             ///< sum_{k>=0} 1 / (2k+1)^s   (Dirichlet lambda)
  AlternatingOddPower,  ///< sum_{k>=0} (-1)^k / (2k+1)^s   (Dirichlet beta)
};

struct SeriesSpec {
  Family family;
  int exponent;

  /// Throws std::invalid_argument if exponent < 2.
  void validate() const;

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

struct SeriesResult {
  double value;
  long terms_used;
  /// Bound on the truncation error (excludes floating-point rounding).
  double tail_bound;
};

class ToleranceUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedPower : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr long kDefaultMaxTerms = 10'000'000;

/// OddPower: partial sum to N plus the Euler-Maclaurin tail through the f'''
/// correction; tail_bound is the magnitude of the first omitted (f^(5)) term,
/// which bounds the remainder for this completely monotone summand.
/// AlternatingOddPower: plain partial sum; tail_bound is the first omitted
/// term. N is the smallest count meeting `tol`; ToleranceUnreachable if it
/// exceeds max_terms.
SeriesResult sum_series(const SeriesSpec& spec, double tol, long max_terms = kDefaultMaxTerms);

/// zeta(2) from the odd-square sum: zeta(2) = odd + zeta(2)/4.
double zeta2_from_odd(double odd_sum);

/// Integral over [0,1] of y^(2k) ln^p(y), i.e. (-1)^p p! / (2k+1)^(p+1).
/// Only p in {1, 2, 3} is supported.
double moment_integral(int k, int p);

}  // namespace basel::series
