#pragma once

#include <cmath>

namespace twophoton {

/*!
  Running sum with Neumaier's variant of Kahan compensation.

  Unlike plain Kahan, the correction term is also right when the incoming
  addend is larger in magnitude than the running sum, which happens in the
  first few terms of the Lerch series where 1/(k + a) changes sign.
*/
template <typename Value>
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(Value initial) : sum_(initial) {}

  constexpr CompensatedSum& operator+=(Value value) {
    const Value t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  constexpr Value value() const { return sum_ + compensation_; }

 private:
  Value sum_{0};
  Value compensation_{0};
};

}  // namespace twophoton
