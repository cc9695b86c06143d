#pragma once

namespace femtosim {

/// Compensated (Kahan) accumulator for long sums of small terms.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;

  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }

  double value() const { return sum; }
};

}  // namespace femtosim
