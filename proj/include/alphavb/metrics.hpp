#pragma once

#include "alphavb/model.hpp"
#include "alphavb/simgen.hpp"

#include <vector>

namespace alphavb::metrics {

struct MetricBundle {
  double l2 = 0.0;
  double fdr = 0.0;
  double tpr = 0.0;
  double mspe = 0.0;
};

enum class Estimate {
  gm,         // gamma .* mu
  mu_selected // mu on coordinates with gamma > threshold, 0 elsewhere
};

VectorXd point_estimate(const VariationalParams& params, Estimate mode, double threshold);

// Indices with gamma_i strictly above threshold, ascending.
std::vector<int> select(const VectorXd& gamma, double threshold);

// l2 = |theta_hat - theta|, fdr / tpr from the selected set against the true support
// (empty selection gives fdr 0, empty support gives tpr 1), mspe on the test split.
MetricBundle evaluate(const simgen::SimInstance& inst, const VariationalParams& params,
                      double threshold, Estimate mode);

} // namespace alphavb::metrics
