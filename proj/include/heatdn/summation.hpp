#pragma once

#include <cstddef>

namespace heatdn {

/// Kahan-compensated accumulator. The spectral sums run up to ~1e6 terms
/// with sign cancellation, so plain accumulation is not good enough.
class KahanSum {
 public:
  void add(double x) noexcept {
    double y = x - c_;
    double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

/// Sum term(i) for i = 1..n with compensation.
template <typename F>
double kahan_sum(std::size_t n, F&& term) {
  KahanSum s;
  for (std::size_t i = 1; i <= n; ++i) s.add(term(i));
  return s.value();
}

}  // namespace heatdn
