// Copyright 2026 The vvcode Authors
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cmath>
#include <limits>

namespace vv {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  CompensatedSum& operator+=(const CompensatedSum& o) noexcept {
    add(o.sum_);
    add(o.comp_);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// -p log2 p with the 0 log 0 = 0 convention.
inline double surprisal_term(double p) noexcept {
  return p > 0.0 ? -p * std::log2(p) : 0.0;
}

struct Interval {
  double low = 0.0;
  double high = 0.0;

  double mid() const noexcept {
    return std::isfinite(high) ? 0.5 * (low + high) : low;
  }
  double width() const noexcept { return high - low; }
  bool bounded() const noexcept { return std::isfinite(high); }
  bool contains(double x, double slack = 0.0) const noexcept {
    return x >= low - slack && x <= high + slack;
  }
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace vv
