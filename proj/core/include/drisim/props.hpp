#pragma once

#include "drisim/config.hpp"

namespace drisim {

/// Outcome of the fractional-optimizer property suite: objective-trace
/// monotonicity and validity of the quadratic upper bound on randomized
/// instances.
struct PropsReport {
  int instances = 0;
  double slack = 0.0;

  int trace_violations = 0;
  double worst_trace_increase = 0.0;  // largest u[k+1] - u[k] observed

  int bound_violations = 0;
  double worst_bound_gap = 0.0;  // most negative g - f observed

  int touch_violations = 0;
  double worst_touch_gap = 0.0;  // largest |g - f| at the expansion point

  bool pass() const {
    return trace_violations == 0 && bound_violations == 0 && touch_violations == 0;
  }
};

PropsReport run_mm_property_suite(const PropsConfig& config);

}  // namespace drisim
