#pragma once

#include <cmath>
#include <concepts>

namespace basel {

/// Compensated accumulator (Neumaier's variant of Kahan summation).
///
/// The running error term is carried separately and folded back in on
/// read, so a long stream of small quadrature or series terms is not
/// absorbed by a large partial sum. Unlike plain Kahan, the correction is
/// also exact when an addend is larger in magnitude than the running sum.
template <std::floating_point T>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(T initial) : sum_(initial) {}

  CompensatedSum& operator+=(T value) noexcept {
    const T t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  [[nodiscard]] T value() const noexcept { return sum_ + compensation_; }

 private:
  T sum_{0};
  T compensation_{0};
};

}  // namespace basel
