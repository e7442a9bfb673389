#pragma once

#include <functional>

namespace cnd {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;  // summed per-interval error estimates
};

// Adaptive Simpson over [a, b] (a <= b). Subdivides until the per-interval
// Richardson estimate meets its share of the tolerance; throws PrecisionError
// if the recursion depth limit is hit first.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-13, double abs_tol = 0.0);

}  // namespace cnd
