#include "alphavb/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace alphavb::metrics {

VectorXd point_estimate(const VariationalParams& params, Estimate mode,
                        double threshold) {
  if (mode == Estimate::gm) return params.gamma.cwiseProduct(params.mu);
  VectorXd out = VectorXd::Zero(params.mu.size());
  for (int i = 0; i < params.mu.size(); ++i)
    if (params.gamma(i) > threshold) out(i) = params.mu(i);
  return out;
}

std::vector<int> select(const VectorXd& gamma, double threshold) {
  std::vector<int> out;
  for (int i = 0; i < gamma.size(); ++i)
    if (gamma(i) > threshold) out.push_back(i);
  return out;
}

MetricBundle evaluate(const simgen::SimInstance& inst, const VariationalParams& params,
                      double threshold, Estimate mode) {
  const long p = inst.theta.size();
  if (params.mu.size() != p || params.sigma.size() != p || params.gamma.size() != p ||
      inst.X_test.cols() != p || inst.X_test.rows() != inst.Y_test.size())
    throw std::invalid_argument("shape");

  const VectorXd theta_hat = point_estimate(params, mode, threshold);
  const auto selected = select(params.gamma, threshold);

  int false_pos = 0, true_pos = 0;
  for (int i : selected) {
    if (std::binary_search(inst.support.begin(), inst.support.end(), i))
      ++true_pos;
    else
      ++false_pos;
  }

  MetricBundle m;
  m.l2 = (theta_hat - inst.theta).norm();
  m.fdr = selected.empty() ? 0.0
                           : false_pos / static_cast<double>(selected.size());
  m.tpr = inst.support.empty()
              ? 1.0
              : true_pos / static_cast<double>(inst.support.size());
  m.mspe = (inst.Y_test - inst.X_test * theta_hat).squaredNorm() /
           static_cast<double>(inst.Y_test.size());
  return m;
}

} // namespace alphavb::metrics
