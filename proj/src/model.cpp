#include "alphavb/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace alphavb {

PriorSpec default_prior(int p) {
  PriorSpec prior;
  prior.b0 = static_cast<double>(p);
  return prior;
}

double prior_inclusion(const PriorSpec& prior) {
  if (!(prior.a0 > 0.0) || !(prior.b0 > 0.0) || !(prior.lambda > 0.0))
    throw std::invalid_argument("domain");
  return prior.a0 / (prior.a0 + prior.b0);
}

double clamp_gamma(double g) {
  return std::clamp(g, kGammaFloor, 1.0 - kGammaFloor);
}

DatasetView precompute(const MatrixXd& X, const VectorXd& Y) {
  if (X.rows() < 1 || X.cols() < 1 || Y.size() != X.rows())
    throw std::invalid_argument("shape");
  if (!X.allFinite() || !Y.allFinite())
    throw std::invalid_argument("non-finite input");

  DatasetView view;
  view.X = X;
  view.Y = Y;
  view.gram = X.transpose() * X;
  view.xty = X.transpose() * Y;
  view.yty = Y.squaredNorm();
  view.n = static_cast<int>(X.rows());
  view.p = static_cast<int>(X.cols());
  return view;
}

double gaussian_logpdf(double x, double mean, double sd) {
  if (!(sd > 0.0)) throw std::invalid_argument("domain");
  const double z = (x - mean) / sd;
  return -0.5 * std::log(2.0 * M_PI) - std::log(sd) - 0.5 * z * z;
}

double laplace_logpdf(double x, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("domain");
  return std::log(0.5 * rate) - rate * std::abs(x);
}

double folded_normal_mean(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("domain");
  const double m = mu / sigma;
  return sigma * std::sqrt(2.0 / M_PI) * std::exp(-0.5 * m * m) +
         mu * std::erf(m / std::sqrt(2.0));
}

double binary_entropy(double z) {
  if (!(z >= 0.0) || !(z <= 1.0)) throw std::invalid_argument("domain");
  if (z == 0.0 || z == 1.0) return 0.0;
  return -z * std::log2(z) - (1.0 - z) * std::log2(1.0 - z);
}

double logit(double z) {
  return std::log(z) - std::log1p(-z);
}

double inv_logit(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double log_sum_exp(const VectorXd& v) {
  const double m = v.maxCoeff();
  if (!std::isfinite(m)) return m; // all -inf (or a NaN propagates)
  double acc = 0.0;
  for (int i = 0; i < v.size(); ++i) acc += std::exp(v(i) - m);
  return m + std::log(acc);
}

} // namespace alphavb
