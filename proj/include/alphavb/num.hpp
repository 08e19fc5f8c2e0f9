#pragma once

#include <functional>

namespace alphavb {

struct MinimizeResult {
  double x = 0.0;
  double value = 0.0;
};

// Derivative-free 1-D minimization: a coarse probe grid over [lo, hi] followed by
// golden-section refinement around the best probe. Non-finite objective values are
// treated as +inf; if every probe is non-finite the objective is unusable and an
// exception ("infeasible objective") is thrown. Terminates once the bracket width
// drops below tol * max(1, |x|). Fully deterministic for a given (f, lo, hi, tol).
MinimizeResult scalar_minimize(const std::function<double(double)>& f, double lo,
                               double hi, double tol);

} // namespace alphavb
